use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_decireal"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn first_line(args: &[&str]) -> String {
    stdout(args).lines().next().unwrap_or_default().to_string()
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exit code")
}

#[test]
fn eval_prints_digits_then_details() {
    let out = stdout(&["eval", "0.(3)+0.(6)", "10"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "1.0000000000");
    assert_eq!(lines[1], "order: 0");
    assert_eq!(lines[2], "hint: Terminating(1) = 1*2^148952");
    assert_eq!(first_line(&["eval", "0.(3)*3", "3"]), "1.000");
    assert_eq!(first_line(&["eval", "0.(3)*0.(3)", "10"]), "0.1111111111");
    assert_eq!(first_line(&["eval", "1 + neg(1.00001)", "6"]), "-0.000010");
    assert_eq!(first_line(&["eval", "-1/3", "4"]), "-0.3333");
}

#[test]
fn eval_default_digits_is_thirty() {
    let line = first_line(&["eval", "recip(7)"]);
    assert_eq!(line, format!("0.{}", "142857".repeat(5)));
}

#[test]
fn eval_trace_and_paths() {
    let out = stdout(&["eval", "0.(4)*0.(4)", "8", "--trace", "--path", "stabilized"]);
    assert!(out.starts_with("0.19753086\n"));
    assert!(out.contains("trace: left depth"));
    assert_eq!(first_line(&["eval", "0.(4)*0.(4)", "8", "--path", "certified"]), "0.19753086");
}

#[test]
fn eval_with_supplied_hint() {
    assert_eq!(first_line(&["eval", "0.(3)+0.(1)", "5", "--hint", "1"]), "0.44444");
    assert_eq!(first_line(&["eval", "0.(3)+0.(1)", "5", "--hint", "1*2^0"]), "0.44444");
    assert_eq!(code(&["eval", "0.(3)+0.(1)", "5", "--hint", "7"]), 4);
    assert_eq!(code(&["eval", "0.(3)+0.(1)", "--hint", "0"]), 2);
}

#[test]
fn output_is_repeatable() {
    let a = stdout(&["eval", "(1/3 + 1/7) * (2 - 5/11)", "40"]);
    let b = stdout(&["eval", "(1/3 + 1/7) * (2 - 5/11)", "40"]);
    assert_eq!(a, b);
}

#[test]
fn parse_errors_exit_two() {
    assert_eq!(code(&["eval", "1 +"]), 2);
    assert_eq!(code(&["eval", "0.(3"]), 2);
    assert_eq!(code(&["padic", "4", "1"]), 2);
    assert_eq!(code(&["encode", "1/2", "--as-binary-tape"]), 2);
    assert_eq!(code(&["nonsense"]), 2);
}

#[test]
fn invariant_violations_exit_four() {
    assert_eq!(code(&["eval", "recip(1 - 1)"]), 4);
}

#[test]
fn encode_tapes() {
    assert_eq!(first_line(&["encode", "16", "--as-binary-tape"]), "eps [0] 0 0 0 1 eps");
    assert_eq!(first_line(&["encode", "1", "--letters", "6"]), "[0] ξ 1 0 0 0");
    assert_eq!(first_line(&["encode", "1", "--letters", "6", "--ascii"]), "[0] x 1 0 0 0");
    assert_eq!(
        first_line(&["encode", "0.0000000000000017566", "--format", "xs", "--letters", "14"]),
        "[ξ] - 1 1 1 1 ξ 1 7 5 6 6 0 0"
    );
    assert_eq!(first_line(&["encode", "0", "--format", "xs", "--letters", "4"]), "[ξ] - 0 0");
    assert_eq!(
        first_line(&["encode", "3/64", "--format", "xp", "--prime", "2", "--letters", "6"]),
        "[0] 1 1 ξ 1 1"
    );
}

#[test]
fn classify_reports() {
    assert_eq!(first_line(&["classify", "--op", "mul", "--", "-1"]), "Discontinuous at u(0)");
    assert_eq!(first_line(&["classify", "--op", "mul", "-1"]), "Discontinuous at u(0)");
    assert_eq!(first_line(&["classify", "--op", "add", "0.(3)"]), "Discontinuous at u(0.(6))");
    assert_eq!(first_line(&["classify", "--op", "add", "-1"]), "Computable");
    let out = stdout(&["classify", "--op", "mul", "2"]);
    assert!(out.contains("graph: loop plus c-freeway"));
}

#[test]
fn hints() {
    assert_eq!(first_line(&["hint", "--op", "add", "0.(3)", "0.(1)"]), "1");
    assert_eq!(first_line(&["hint", "--op", "mul", "20/3", "2"]), "3");
    assert_eq!(first_line(&["hint", "--op", "add", "0.(3)", "0.(6)", "--factored"]), "1*2^148952");
    let full = first_line(&["hint", "--op", "add", "0.(3)", "0.(6)"]);
    assert!(full.len() > 40_000 && full.bytes().all(|b| b.is_ascii_digit()));
    assert_eq!(code(&["hint", "--op", "add", "1.25", "0"]), 0);
    assert_eq!(code(&["hint", "--op", "add", "1.0000000001", "0"]), 3);
}

#[test]
fn sup_and_inf() {
    assert_eq!(first_line(&["sup", "0.5", "0.(3)", "-2", "--digits", "4"]), "0.5000");
    assert_eq!(first_line(&["sup", "--inf", "0.5", "0.(3)", "-2", "--digits", "4"]), "-2.0000");
}

#[test]
fn involution() {
    assert_eq!(first_line(&["involution", "3.14159", "6"]), "0.314159");
    assert_eq!(first_line(&["involution", "neg(0.1)", "2"]), "-1.00");
    assert_eq!(first_line(&["involution", "0", "2"]), "0.00");
}

#[test]
fn padic_report() {
    let out = stdout(&["padic", "5", "-1", "6"]);
    assert_eq!(out, "p: 5\norder: 0\nvalue: -1\ndigits: 4 4 4 4 4 4\n");
    let out = stdout(&["padic", "3", "1/2 * 2 + 1/3", "4"]);
    assert!(out.contains("order: -1"));
    assert!(out.contains("digits: 1 1 0 0"));
}
