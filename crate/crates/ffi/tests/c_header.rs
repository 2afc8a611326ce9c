//! Compile and run a C program against the generated header and static library.

use std::path::{Path, PathBuf};
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "mdecc.h"

int main(void) {
    MdeccCode *code = NULL;
    if (mdecc_code_from_config_json("{\"construction\":\"A\",\"dims\":[4,4]}", &code) != MDECC_STATUS_OK) return 10;
    size_t r = 0, n = 0;
    if (mdecc_code_redundancy(code, &r) != MDECC_STATUS_OK || r != 7) return 11;
    if (mdecc_code_volume(code, &n) != MDECC_STATUS_OK || n != 16) return 12;
    uint8_t array[16];
    memset(array, 0, sizeof array);
    array[6] = 1;
    array[10] = 1;
    size_t count = 0;
    if (mdecc_code_correct(code, array, n, &count) != MDECC_STATUS_OK || count != 2) return 13;
    for (size_t i = 0; i < n; i++) if (array[i]) return 14;
    mdecc_code_free(code);

    if (mdecc_code_from_config_json("{\"construction\":\"Z\"}", &code) != MDECC_STATUS_INVALID_CONFIG) return 15;
    if (code != NULL) return 16;
    char *msg = mdecc_last_error_message();
    if (msg == NULL || strlen(msg) == 0) return 17;
    mdecc_string_free(msg);
    printf("ok %s\n", mdecc_version());
    return 0;
}
"#;

fn target_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().and_then(Path::parent).unwrap().to_path_buf()
}

#[test]
fn c_program_links_and_runs() {
    let dir = target_dir();
    let lib = dir.join("libmdecc_ffi.a");
    if !lib.exists() {
        eprintln!("skipping: {} not built", lib.display());
        return;
    }
    let tmp = tempfile::tempdir().unwrap();
    let src = tmp.path().join("smoke.c");
    let exe = tmp.path().join("smoke");
    std::fs::write(&src, PROGRAM).unwrap();
    let include = Path::new(env!("CARGO_MANIFEST_DIR")).join("include");
    let status = Command::new("cc")
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(&include)
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("C compiler available");
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status.code());
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("ok "));
}
