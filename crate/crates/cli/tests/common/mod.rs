use std::process::{Command, Output};

pub fn chroma(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chroma"))
        .args(args)
        .env_remove("CHROMA_POINT_BUDGET")
        .output()
        .expect("spawn chroma")
}

pub fn stdout(args: &[&str]) -> String {
    let out = chroma(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[allow(dead_code)]
pub fn json(args: &[&str]) -> serde_json::Value {
    serde_json::from_str(&stdout(args)).unwrap()
}
