//! Solve instances of all three trigger problem families and cross-check
//! each answer against the brute-force oracle.
//!
//! ```sh
//! cargo run -p cotpoison --example solve_problems
//! ```

use cotpoison::problems::{
    brute_oracle, render_statement, solve, Family, Param, ProblemInstance, ProblemSymbol, Symbol,
};

fn main() -> anyhow::Result<()> {
    let cases = vec![
        (Family::S1, Symbol::F, Param::X(54)),
        (Family::S1, Symbol::G, Param::X(8)),
        (Family::S1, Symbol::H, Param::X(16)),
        (Family::S1, Symbol::I, Param::X(16)),
        (
            Family::S2,
            Symbol::G,
            Param::Intervals(vec![(-6, -5), (-18, -13), (-16, -8)]),
        ),
        (
            Family::S2,
            Symbol::I,
            Param::Intervals(vec![(-6, -5), (-18, -13), (-16, -8)]),
        ),
        (Family::S3, Symbol::F, Param::Array(vec![2, 1, 0, -1, -2])),
        (Family::S3, Symbol::I, Param::Array(vec![2, 1, 0, -1, -2])),
    ];

    for (family, symbol, param) in cases {
        let instance = ProblemInstance::new(ProblemSymbol::new(family, symbol), param, 0)?;
        let statement = render_statement(&instance)?;
        let answer = solve(&instance)?;
        let check = brute_oracle(&instance)?;
        assert_eq!(answer, check, "solver and brute oracle must agree");
        println!("{family}.{symbol}  ->  {answer}");
        println!("    {statement}");
    }

    // Statements come in 25 deterministic rephrasings per problem.
    let instance = ProblemInstance::new(
        ProblemSymbol::new(Family::S1, Symbol::F),
        Param::X(54),
        7,
    )?;
    println!("\nrephrasing 7 of the factorial problem:");
    println!("    {}", render_statement(&instance)?);
    Ok(())
}
