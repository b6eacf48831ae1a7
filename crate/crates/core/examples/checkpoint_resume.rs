//! Interrupting an enumeration and resuming it from a checkpoint.

use toric_codes::classify::class_by_id;
use toric_codes::code::{build_code, Checkpoint, EnumerationJob, Mode};
use toric_codes::gf::FieldSpec;

fn main() {
    let field = FieldSpec::with_order(11).unwrap();
    let code = build_code(&field, &class_by_id("P6_8").unwrap().polygon).unwrap();
    let job = EnumerationJob::new(code.field(), code.generator(), Mode::Projective);
    println!("{} chunks", job.chunk_count());

    let mut last: Option<Checkpoint> = None;
    let stopped = job.run_resumable(None, 2, 4, |cp| {
        if cp.next_chunk > job.chunk_count() / 2 {
            return Err(std::io::Error::other("stop"));
        }
        last = Some(cp.clone());
        Ok(())
    });
    println!("first run: {:?}", stopped.map(|_| ()));
    let cp = last.expect("at least one checkpoint");
    let json = serde_json::to_string(&cp).unwrap();
    println!("checkpoint at chunk {} of {}, {} bytes", cp.next_chunk, cp.chunks_total, json.len());

    let restored: Checkpoint = serde_json::from_str(&json).unwrap();
    let resumed = job.run_resumable(Some(restored), 2, 4, |_| Ok(())).unwrap();
    let fresh = job.run(2);
    println!("resumed == uninterrupted: {}", resumed == fresh);
    println!("W(x) = {fresh}");
}
