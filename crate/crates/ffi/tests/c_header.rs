//! Compiles and runs a small C program against the generated header and
//! the static library.

use std::path::{Path, PathBuf};
use std::process::Command;

const PROGRAM: &str = r#"
#include <math.h>
#include <stdio.h>
#include "spinotto.h"

int main(void) {
    SpinottoEngine *e = NULL;
    if (spinotto_engine_new(2, 0.1, 4.0, 3.0, 1.0, 0.5, &e) != SPINOTTO_STATUS_OK) return 1;
    SpinottoCycle c;
    if (spinotto_engine_cycle(e, &c) != SPINOTTO_STATUS_OK) return 2;
    spinotto_engine_free(e);
    if (fabs(c.w - 0.002748484916949905) > 1e-12 || c.mode != SPINOTTO_CYCLE_MODE_ENGINE) return 3;
    if (spinotto_engine_new(2, -1.0, 4.0, 3.0, 1.0, 0.5, &e) != SPINOTTO_STATUS_INVALID_ARGUMENT) return 4;
    printf("%s\n", spinotto_last_error());
    return 0;
}
"#;

fn static_lib() -> Option<PathBuf> {
    let exe = std::env::current_exe().ok()?;
    let profile_dir = exe.parent()?.parent()?;
    let lib = profile_dir.join("libspinotto_ffi.a");
    lib.exists().then_some(lib)
}

fn have_cc() -> bool {
    Command::new("cc").arg("--version").output().is_ok_and(|o| o.status.success())
}

#[test]
fn c_program_links_and_runs() {
    let (Some(lib), true) = (static_lib(), have_cc()) else {
        eprintln!("skipping: no C compiler or static library");
        return;
    };
    let include = Path::new(env!("CARGO_MANIFEST_DIR")).join("include");
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let src = dir.join("spinotto_check.c");
    let bin = dir.join("spinotto_check");
    std::fs::write(&src, PROGRAM).unwrap();
    let out = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-o"])
        .arg(&bin)
        .arg(&src)
        .arg("-I")
        .arg(&include)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let run = Command::new(&bin).output().unwrap();
    assert!(run.status.success(), "exit {:?}", run.status.code());
    assert!(String::from_utf8_lossy(&run.stdout).contains("non-negative"));
}
