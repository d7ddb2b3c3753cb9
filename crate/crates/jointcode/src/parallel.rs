//! Multi-threaded exact minrank.
//!
//! The completion space is cut into prefix blocks that workers claim from a
//! shared counter. Block results are merged with [`Best::merge`], which
//! keeps the smallest rank and then the smallest assignment code, so the
//! answer does not depend on the thread count or on scheduling.

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;
use std::thread;

use jointcode_core::minrank::{Best, CompletionSearch, MinrankResult};
use jointcode_core::{Result, TriMatrix};

/// Blocks per worker, so uneven blocks still balance.
const BLOCKS_PER_THREAD: usize = 8;

pub fn exact_minrank_parallel(fm: &TriMatrix, max_unknowns: usize, threads: usize) -> Result<MinrankResult> {
    let search = CompletionSearch::new(fm, max_unknowns)?;
    let threads = threads.max(1);
    let u = search.unknowns();
    if threads == 1 || u < 8 {
        let best = search.scan(0, 0);
        return Ok(search.result(best));
    }
    let wanted = (threads * BLOCKS_PER_THREAD).next_power_of_two().trailing_zeros() as usize;
    let prefix_len = wanted.min(u);
    let blocks = 1u64 << prefix_len;
    let next = AtomicU64::new(0);
    let best = Mutex::new(Best {
        value: usize::MAX,
        code: u64::MAX,
    });
    thread::scope(|s| {
        for _ in 0..threads {
            s.spawn(|| {
                let mut local = Best {
                    value: usize::MAX,
                    code: u64::MAX,
                };
                loop {
                    let p = next.fetch_add(1, Ordering::Relaxed);
                    if p >= blocks {
                        break;
                    }
                    local = local.merge(search.scan(prefix_len, p));
                }
                let mut b = best.lock().expect("no worker panics while holding the lock");
                *b = b.merge(local);
            });
        }
    });
    let best = best.into_inner().expect("workers finished");
    Ok(search.result(best))
}

/// Worker count from the machine, at least one.
pub fn available_threads() -> usize {
    thread::available_parallelism().map_or(1, |n| n.get())
}
