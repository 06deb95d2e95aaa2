//! File-system watching with a debounce window.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::mpsc;
use std::time::{Duration, Instant};

use notify::{RecursiveMode, Watcher};

pub const DEBOUNCE: Duration = Duration::from_millis(300);

fn is_java(path: &Path) -> bool {
    path.extension().is_some_and(|x| x == "java") && !path.file_name().is_some_and(|n| n.to_string_lossy().starts_with('.'))
}

/// Watch `root` recursively and call `on_change` with each batch of changed
/// Java files once no further change has arrived for [`DEBOUNCE`]. Returns
/// when `stop` is set.
pub fn watch_java(root: &Path, stop: &AtomicBool, mut on_change: impl FnMut(Vec<PathBuf>)) -> notify::Result<()> {
    let (tx, rx) = mpsc::channel();
    let mut watcher = notify::recommended_watcher(move |res: notify::Result<notify::Event>| {
        if let Ok(event) = res {
            if event.kind.is_modify() || event.kind.is_create() {
                for p in event.paths {
                    let _ = tx.send(p);
                }
            }
        }
    })?;
    watcher.watch(root, RecursiveMode::Recursive)?;

    let mut batch = BTreeSet::new();
    let mut last = Instant::now();
    while !stop.load(Ordering::Relaxed) {
        match rx.recv_timeout(Duration::from_millis(50)) {
            Ok(p) if is_java(&p) => {
                batch.insert(p);
                last = Instant::now();
            }
            Ok(_) | Err(mpsc::RecvTimeoutError::Timeout) => {}
            Err(mpsc::RecvTimeoutError::Disconnected) => break,
        }
        if !batch.is_empty() && last.elapsed() >= DEBOUNCE {
            on_change(std::mem::take(&mut batch).into_iter().filter(|p| p.is_file()).collect());
        }
    }
    Ok(())
}
