//! Drive the command-line front end in-process and read its CSV back.

use pilotwave::cli::{parse_csv, run};

pub fn run_example() -> pilotwave::Result<()> {
    let env = vec![("PILOTWAVE_OUTPUT__PRECISION".to_string(), "12".to_string())];
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(
        [
            "pilotwave",
            "--no-timestamp",
            "orbit",
            "--alpha-inv",
            "137",
            "--n",
            "1,2,1/2",
        ],
        &env,
        &mut out,
        &mut err,
    );
    let text = String::from_utf8(out).expect("utf-8");
    let table = parse_csv(&text)?;
    println!("exit {code}; columns: {}", table.columns.join(", "));
    for (n, mp) in table.float_column("n")?.iter().zip(table.float_column("m_plus")?) {
        println!("n = {n}: m+ = {mp}");
    }
    print!("{}", String::from_utf8_lossy(&err));

    let mut out = Vec::new();
    let code = run(["pilotwave", "--preset", "fig1", "check"], &[], &mut out, &mut err);
    println!("check exit status: {code}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> pilotwave::Result<()> {
    run_example()
}
