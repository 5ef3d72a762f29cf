//! Compiles the generated header and links a small C program against the
//! static library. Skipped when no C compiler is on PATH.

use std::path::{Path, PathBuf};
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "circlang.h"

int main(void) {
    CirclangPartition *p = NULL;
    if (circlang_partition(12, 3, 4, CIRCLANG_PARTITION_MODE_NON_REMOVAL, &p) != CIRCLANG_STATUS_OK) return 10;
    size_t buf[8], len = 0;
    for (size_t g = 0; g < circlang_partition_group_count(p); g++) {
        if (circlang_partition_group(p, g, buf, 8, &len) != CIRCLANG_STATUS_OK) return 11;
        for (size_t i = 0; i < len; i++) printf("%zu%s", buf[i], i + 1 < len ? "," : "");
        printf(";");
    }
    circlang_partition_free(p);

    CirclangAlphabet *a = NULL;
    circlang_alphabet_english(&a);
    size_t pattern[] = {2, 4, 2};
    int ok = circlang_check_sentence(a, "we burden", pattern, 3) == CIRCLANG_STATUS_OK;
    circlang_alphabet_free(a);
    printf("%s;", ok ? "match" : "nomatch");

    if (circlang_partition(1, 2, 1, CIRCLANG_PARTITION_MODE_REMOVAL, &p) == CIRCLANG_STATUS_OK) return 12;
    printf("%s\n", circlang_last_error() ? "error-set" : "no-error");
    return 0;
}
"#;

fn compiler() -> Option<String> {
    ["cc", "gcc", "clang"]
        .into_iter()
        .find(|c| Command::new(c).arg("--version").output().is_ok_and(|o| o.status.success()))
        .map(String::from)
}

fn target_dir() -> PathBuf {
    // target/<profile>/deps/<test binary>
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

fn include_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("include")
}

#[test]
fn header_is_valid_c_and_cpp() {
    let Some(cc) = compiler() else {
        eprintln!("no C compiler found; skipping");
        return;
    };
    let header = include_dir().join("circlang.h");
    for lang in ["c", "c++"] {
        let status = Command::new(&cc)
            .args(["-fsyntax-only", "-Wall", "-Werror", "-x", lang])
            .arg(&header)
            .status()
            .unwrap();
        assert!(status.success(), "{lang} syntax check failed");
    }
}

#[test]
fn links_and_runs_from_c() {
    let Some(cc) = compiler() else {
        eprintln!("no C compiler found; skipping");
        return;
    };
    let lib = target_dir().join("libcirclang_ffi.a");
    if !lib.exists() {
        eprintln!("{} not built; skipping", lib.display());
        return;
    }
    let dir = tempfile_dir();
    let src = dir.join("main.c");
    let exe = dir.join("main");
    std::fs::write(&src, PROGRAM).unwrap();
    let out = Command::new(&cc)
        .arg(&src)
        .arg("-I")
        .arg(include_dir())
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .output()
        .unwrap();
    assert!(out.status.success(), "link failed: {}", String::from_utf8_lossy(&out.stderr));
    let run = Command::new(&exe).output().unwrap();
    assert!(run.status.success(), "exit {:?}", run.status.code());
    assert_eq!(
        String::from_utf8_lossy(&run.stdout).trim(),
        "1,4,5,9;2,6,8,10;3,7,11,12;match;error-set"
    );
    let _ = std::fs::remove_dir_all(dir);
}

fn tempfile_dir() -> PathBuf {
    let dir = std::env::temp_dir().join(format!("circlang-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}
