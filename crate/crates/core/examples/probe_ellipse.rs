use acuteprob_core::region::ConvexRegion;
use std::time::Instant;
fn main() {
    let e = ConvexRegion::ellipse(1.0, 0.25).unwrap();
    let t0 = Instant::now();
    let framed = e.longest_segment_frame().unwrap();
    println!("frame: {:?}", t0.elapsed());
    let t0 = Instant::now();
    let h = framed.height_at(0.5);
    println!("height_at(0.5) = {h}: {:?}", t0.elapsed());
    let t0 = Instant::now();
    let profile = framed.height_profile(64).unwrap();
    println!("profile(64): hbar={} {:?}", profile.hbar, t0.elapsed());
}
