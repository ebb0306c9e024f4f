use super::{CleanTrace, TraceSource};
use crate::error::Result;
use crate::problems::{render_statement, solve, Family, Param, ProblemInstance, Symbol};

/// Deterministic stand-in for a model-generated clean trace.
///
/// Offline pipelines and tests need clean traces without a model in the
/// loop; this builds a short, correctly-worded thought plus a boxed answer
/// straight from the oracle. For real experiments, import traces from disk
/// or generate them through the chat client.
pub fn synthetic_clean_trace(instance: &ProblemInstance) -> Result<CleanTrace> {
    let prompt = render_statement(instance)?;
    let answer_value = solve(instance)?.value;
    let subject = subject_line(instance);
    let working = working_lines(instance);

    let mut think = String::new();
    think.push_str(&format!("The problem asks for {subject}. "));
    think.push_str("Let me restate it to make sure nothing is misread. ");
    think.push_str(&format!("We are given {}. ", instance.param.render()));
    think.push_str(&working);
    think.push_str("Let me double check the computation step by step. ");
    think.push_str("Rerunning the same procedure gives the same value. ");
    think.push_str(&format!("So the result is {answer_value}. "));
    think.push_str(&format!(
        "The final answer is $\\boxed{{{answer_value}}}$."
    ));

    let answer = format!(
        "{}Therefore the result is {answer_value}.\n\nFinal Answer: The final answer is $\\boxed{{{answer_value}}}$",
        answer_lead(instance)
    );

    Ok(CleanTrace {
        instance: instance.clone(),
        prompt,
        think,
        answer,
        source: TraceSource::Generated,
    })
}

fn subject_line(instance: &ProblemInstance) -> String {
    let x = instance.param.render();
    match (instance.symbol.family, instance.symbol.symbol) {
        (Family::S1, Symbol::F) => format!("the remainder when {x}! is divided by 1000"),
        (Family::S1, Symbol::G) => format!(
            "the remainder when the product of the first {x} Fibonacci numbers is divided by 1000"
        ),
        (Family::S1, Symbol::H) => format!(
            "the remainder when the product of the first {x} Lucas numbers is divided by 1000"
        ),
        (Family::S1, Symbol::I) => format!(
            "the remainder when the product of the first {x} Mersenne numbers is divided by 1000"
        ),
        (Family::S2, Symbol::F) => {
            format!("the maximum number of non-overlapping intervals in {x}")
        }
        (Family::S2, Symbol::G) => format!(
            "the minimum number of removals so the intervals {x} become non-overlapping"
        ),
        (Family::S2, Symbol::H) => {
            format!("the minimum number of rooms for the meetings {x}")
        }
        (Family::S2, Symbol::I) => {
            format!("the fewest arrows needed to burst the balloons {x}")
        }
        (Family::S3, Symbol::F) => format!(
            "the length of the longest strictly increasing subsequence of {x}"
        ),
        (Family::S3, Symbol::G) => format!(
            "the minimum removals that make the array {x} strictly increasing"
        ),
        (Family::S3, Symbol::H) => format!(
            "the number of distinct longest strictly increasing subsequences of {x}"
        ),
        (Family::S3, Symbol::I) => {
            format!("the length of the longest bitonic subsequence of {x}")
        }
    }
}

fn working_lines(instance: &ProblemInstance) -> String {
    match (instance.symbol.family, instance.symbol.symbol) {
        (Family::S1, Symbol::F) => {
            let x = match &instance.param {
                Param::X(x) => *x,
                _ => unreachable!(),
            };
            let mut s = String::from(
                "Since 1000 = 8 * 125, the factor counting approach works well here. ",
            );
            let mut product = 1u64;
            let upto = x.min(6);
            for k in 1..=upto {
                product = product * k % 1000;
                s.push_str(&format!("After multiplying by {k} the running product is {product} mod 1000. "));
            }
            if x > upto {
                s.push_str(&format!(
                    "Continuing the same reduction up to {x} keeps every intermediate below 1000. "
                ));
            }
            s
        }
        (Family::S1, Symbol::G) => String::from(
            "The Fibonacci sequence starts F_1 = 1, F_2 = 1, F_3 = 2, F_4 = 3, F_5 = 5. \
             We multiply the Fibonacci numbers term by term, reducing modulo 1000 after each step. \
             The running product stays manageable because of the reduction. ",
        ),
        (Family::S1, Symbol::H) => String::from(
            "The Lucas sequence starts L_1 = 1, L_2 = 3, L_3 = 4, L_4 = 7, L_5 = 11. \
             We multiply the Lucas numbers term by term, reducing modulo 1000 after each step. \
             The running product stays manageable because of the reduction. ",
        ),
        (Family::S1, Symbol::I) => String::from(
            "The Mersenne numbers are M_n = 2^n - 1, so the list begins 1, 3, 7, 15, 31. \
             We multiply them term by term, reducing modulo 1000 after each step. \
             The powers of two modulo 1000 cycle, which keeps the arithmetic small. ",
        ),
        (Family::S2, Symbol::F) => String::from(
            "Sort the intervals by end time and greedily keep every interval that starts at or after the last kept end. \
             Each kept interval is compatible with the previous selection. \
             The count of kept intervals is the maximum non-overlapping subset size. ",
        ),
        (Family::S2, Symbol::G) => String::from(
            "First find the maximum number of non-overlapping intervals with the end-time greedy. \
             The minimum number of removals is the total count minus that maximum. \
             Removing exactly those intervals leaves a conflict-free list. ",
        ),
        (Family::S2, Symbol::H) => String::from(
            "Sweep the meetings in start order and track how many rooms are simultaneously occupied. \
             Each meeting that starts before the earliest current end needs a new room. \
             The peak number of simultaneous meetings is the room requirement. ",
        ),
        (Family::S2, Symbol::I) => String::from(
            "Sort the balloon intervals by their right endpoint and shoot an arrow at the first right end. \
             Every balloon whose interval covers that point bursts with the same arrow. \
             Repeat with the next uncovered balloon until all have burst. ",
        ),
        (Family::S3, Symbol::F) => String::from(
            "Let dp[j] be the length of the longest strictly increasing subsequence ending at index j. \
             For each j we scan all earlier indices k and extend when the value strictly increases. \
             The answer is the maximum entry of the dp array. ",
        ),
        (Family::S3, Symbol::G) => String::from(
            "The minimum removals equal the array length minus the longest strictly increasing subsequence length. \
             We compute that length with the quadratic dp over prefixes. \
             Everything outside one longest increasing subsequence must be removed. ",
        ),
        (Family::S3, Symbol::H) => String::from(
            "Alongside the dp lengths we carry a count of how many subsequences realize each length. \
             When an extension ties the best length, the counts add up. \
             Summing the counts over indices that achieve the maximum gives the distinct total. ",
        ),
        (Family::S3, Symbol::I) => String::from(
            "Compute the longest strictly increasing subsequence ending at each index, \
             and the longest strictly decreasing subsequence starting at each index. \
             The best bitonic length is the maximum of their sum minus one over all peaks. ",
        ),
    }
}

fn answer_lead(instance: &ProblemInstance) -> String {
    format!("Solution: we compute {}. ", subject_line(instance))
}
