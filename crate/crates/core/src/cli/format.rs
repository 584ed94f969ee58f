use crate::classify::{AxiomOneFailure, AxiomReport, CheckMode, FinitaryFailure, Verdict};
use crate::sets::{SentenceSet, Universe};

pub(super) fn describe_universe(u: &Universe) -> String {
    if u.is_finite() {
        u.symbols().join(", ")
    } else {
        "cofinite".to_string()
    }
}

pub(super) fn set_list(sets: &[SentenceSet]) -> String {
    sets.iter()
        .map(|s| s.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn status<W>(v: &Verdict<W>) -> &'static str {
    match v {
        Verdict::Pass => "pass",
        Verdict::InconclusivePass => "pass (bounded search, not a proof)",
        Verdict::Fail { .. } => "fail",
    }
}

pub(super) fn axiom_lines(r: &AxiomReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("(i)   {}", status(&r.axiom_i)));
    if let Some(w) = r.axiom_i.witness() {
        let what = match w.failure {
            AxiomOneFailure::NotExtensive => "not extensive",
            AxiomOneFailure::NotIdempotent => "not idempotent",
        };
        out.push_str(&format!(
            ": X = {}, C(X) = {}, C(C(X)) = {} ({what})",
            w.set, w.image, w.image_of_image
        ));
    }
    out.push('\n');
    out.push_str(&format!("(ii)  {}", status(&r.axiom_ii)));
    if let Some(w) = r.axiom_ii.witness() {
        out.push_str(&format!(
            ": {} ⊆ {} but C = {} ⊄ {}",
            w.smaller, w.larger, w.smaller_image, w.larger_image
        ));
    }
    out.push('\n');
    out.push_str(&format!("(iii) {}", status(&r.axiom_iii)));
    if let Some(w) = r.axiom_iii.witness() {
        match (w.failure, &w.subset) {
            (FinitaryFailure::Overshoot, Some(f)) => out.push_str(&format!(
                ": {} ∈ C({f}) for finite {f} ⊆ X = {} but not in C(X)",
                w.element, w.set
            )),
            _ => out.push_str(&format!(
                ": {} ∈ C(X) for X = {} but in no C(F) with F finite",
                w.element, w.set
            )),
        }
    }
    out.push('\n');
    let mode = match r.mode {
        CheckMode::Exhaustive => "exhaustive".to_string(),
        CheckMode::ClosedForm => "closed form".to_string(),
        CheckMode::BoundedSearch { bound } => {
            format!(
                "bounded search (size ≤ {}, elements < {})",
                bound.max_size, bound.horizon
            )
        }
    };
    out.push_str(&format!(
        "axiomless: {}; mode: {mode}\n",
        if r.axiomless { "yes" } else { "no" }
    ));
    out
}
