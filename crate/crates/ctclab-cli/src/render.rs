//! Table and CSV rendering. Tables round to six decimals; the CSV forms for
//! the CLI-local reports are key/value rows at full precision, matching the
//! library reports' own CSV style.

use ctclab::experiments::{ComparisonReport, ParadoxReport, SignalReport};
use ctclab::qcore::{DensityMatrix, StateVector};

use crate::{DemoReport, DemoRow, FixedPointReport};

fn f6(x: f64) -> String {
    format!("{x:.6}")
}

fn c6(re: f64, im: f64) -> String {
    format!("{re:.6}{im:+.6}i")
}

fn state_line(state: &StateVector) -> String {
    let amps: Vec<String> = state
        .amplitudes()
        .iter()
        .map(|a| c6(a.re, a.im))
        .collect();
    format!(
        "({}): [{}]",
        state.layout().labels().join(", "),
        amps.join(", ")
    )
}

fn matrix_block(rho: &DensityMatrix, indent: &str) -> String {
    let m = rho.matrix();
    let mut out = String::new();
    for i in 0..m.nrows() {
        let row: Vec<String> = (0..m.ncols()).map(|j| c6(m[(i, j)].re, m[(i, j)].im)).collect();
        out.push_str(&format!("{indent}{}\n", row.join("  ")));
    }
    out
}

fn demo_row(row: &DemoRow) -> String {
    format!(
        "flip {}\n  state {}\n  overlap with {}: {}\n  acceptance probability: {}\n",
        if row.flip { "on" } else { "off" },
        state_line(&row.state),
        row.target,
        f6(row.overlap),
        f6(row.acceptance_prob)
    )
}

pub fn demo_table(r: &DemoReport) -> String {
    format!("{}\n{}", demo_row(&r.flip_off), demo_row(&r.flip_on))
}

pub fn demo_csv(r: &DemoReport) -> String {
    let mut out = String::from("quantity,value\n");
    for (name, value) in [
        ("flip_off_overlap", r.flip_off.overlap),
        ("flip_off_acceptance", r.flip_off.acceptance_prob),
        ("flip_on_overlap", r.flip_on.overlap),
        ("flip_on_acceptance", r.flip_on.acceptance_prob),
    ] {
        out.push_str(&format!("{name},{value}\n"));
    }
    out
}

pub fn signal_table(r: &SignalReport) -> String {
    let mut out = format!(
        "model    {}\nsent     {}\ndecoded  {}\nerrors   {}\nseed     {}\n\n",
        r.model, r.sent, r.decoded, r.error_count, r.seed
    );
    out.push_str("index  sent  flip  p_plus    decoded\n");
    for (i, s) in r.per_bit_states.iter().enumerate() {
        out.push_str(&format!(
            "{i:<5}  {}     {}   {}  {}\n",
            r.sent.get(i).expect("report lengths agree"),
            if s.flip { "on " } else { "off" },
            f6(s.p_plus),
            r.decoded.get(i).expect("report lengths agree"),
        ));
    }
    out
}

pub fn paradox_table(r: &ParadoxReport) -> String {
    let message_trials = r.message_mask.bits().iter().filter(|&&m| m == 1).count();
    format!(
        "trials                {}\n\
         theorem               {}\n\
         message trials        {}\n\
         accepted trials       {}\n\
         acceptance (message)  {}\n\
         acceptance (other)    {}\n\
         post-selected book    {}\n\
         seed                  {}\n",
        r.alice_bits.len(),
        r.theorem,
        message_trials,
        r.accepted.len(),
        f6(r.acceptance_rate_message),
        f6(r.acceptance_rate_nonmessage),
        r.post_selected_book,
        r.seed
    )
}

pub fn fixed_point_table(r: &FixedPointReport) -> String {
    format!(
        "interaction   {}\n\
         environment   {}\n\
         keep          {}\n\
         directions    {}\n\
         entropy bits  {}\n\
         residual      {}\n\
         fixed point ({}):\n{}",
        r.interaction,
        r.environment,
        r.keep,
        r.directions,
        f6(r.entropy_bits),
        f6(r.residual),
        r.fixed_point.layout().labels().join(", "),
        matrix_block(&r.fixed_point, "  ")
    )
}

pub fn fixed_point_csv(r: &FixedPointReport) -> String {
    let mut out = String::from("quantity,value\n");
    out.push_str(&format!("directions,{}\n", r.directions));
    out.push_str(&format!("entropy_bits,{}\n", r.entropy_bits));
    out.push_str(&format!("residual,{}\n", r.residual));
    let m = r.fixed_point.matrix();
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            out.push_str(&format!("rho_{i}_{j}_re,{}\n", m[(i, j)].re));
            out.push_str(&format!("rho_{i}_{j}_im,{}\n", m[(i, j)].im));
        }
    }
    out
}

pub fn compare_table(r: &ComparisonReport) -> String {
    format!(
        "post-selected circuit\n  \
           flip off: acceptance {}, overlap with (|0> + |1>)/sqrt(2) (x) |0>: {}\n  \
           flip on:  acceptance {}, overlap with (|0> - |1>)/sqrt(2) (x) |0>: {}\n\
         fixed-point semantics\n  \
           distance between flip outputs: {}\n  \
           loop state entropy: {} bits\n",
        f6(r.pctc_flip_off.acceptance_prob),
        f6(r.pctc_overlap_plus),
        f6(r.pctc_flip_on.acceptance_prob),
        f6(r.pctc_overlap_minus),
        f6(r.deutsch_flip_distance),
        f6(r.deutsch_fixed_point_entropy_bits)
    )
}
