//! Independent reference computations used by the integration and acceptance
//! tests. Deliberately naive: nested loops, linear scans, no shared code with
//! the library.
#![allow(dead_code, clippy::needless_range_loop)]

/// Word-level complexity flags from an `H x N` attention matrix whose columns
/// map onto words through `token_map`.
pub fn ccd_flags(weights: &[Vec<f64>], token_map: &[usize], words: usize) -> (f64, Vec<bool>, Vec<bool>) {
    let heads = weights.len();
    let n = weights[0].len();
    let mut scores = vec![0.0; n];
    let mut grand = 0.0;
    for i in 0..n {
        for h in 0..heads {
            scores[i] += weights[h][i];
        }
    }
    for h in 0..heads {
        for i in 0..n {
            grand += weights[h][i];
        }
    }
    let threshold = grand / n as f64;
    let token_flags: Vec<bool> = scores.iter().map(|&s| s >= threshold).collect();
    let mut word_flags = vec![false; words];
    for w in 0..words {
        let mut sum = 0.0;
        for i in 0..n {
            if token_map[i] == w {
                sum += scores[i];
            }
        }
        word_flags[w] = sum >= threshold;
    }
    (threshold, token_flags, word_flags)
}

fn grams(tokens: &[&str], n: usize) -> Vec<Vec<String>> {
    let mut out = Vec::new();
    if tokens.len() < n {
        return out;
    }
    for i in 0..=tokens.len() - n {
        out.push(tokens[i..i + n].iter().map(|t| t.to_string()).collect());
    }
    out
}

fn count(list: &[Vec<String>], g: &[String]) -> usize {
    list.iter().filter(|x| x.as_slice() == g).count()
}

fn distinct(list: &[Vec<String>]) -> Vec<Vec<String>> {
    let mut out: Vec<Vec<String>> = Vec::new();
    for g in list {
        if !out.contains(g) {
            out.push(g.clone());
        }
    }
    out
}

/// Raw per-order counts: `[add, keep, delete] x [correct, sys, ref]`.
pub type OrderCounts = [[f64; 3]; 3];

/// Per-order counts for one sentence triple.
pub fn sari_counts(src: &[&str], out: &[&str], refs: &[Vec<&str>], n: usize) -> OrderCounts {
    let r = refs.len() as f64;
    let s_g = grams(src, n);
    let o_g = grams(out, n);
    let mut all_ref = Vec::new();
    for rf in refs {
        all_ref.extend(grams(rf, n));
    }

    let mut add = [0.0; 3];
    for g in distinct(&o_g) {
        if count(&s_g, &g) == 0 {
            add[1] += 1.0;
            if count(&all_ref, &g) > 0 {
                add[0] += 1.0;
            }
        }
    }
    for g in distinct(&all_ref) {
        if count(&s_g, &g) == 0 {
            add[2] += 1.0;
        }
    }

    let mut keep = [0.0; 3];
    let mut del = [0.0; 3];
    for g in distinct(&s_g) {
        let sc = count(&s_g, &g) as f64 * r;
        let oc = count(&o_g, &g) as f64 * r;
        let rc = count(&all_ref, &g) as f64;
        let kept_sys = if sc < oc { sc } else { oc };
        let kept_ref = if sc < rc { sc } else { rc };
        keep[0] += if kept_sys < kept_ref { kept_sys } else { kept_ref };
        keep[1] += kept_sys;
        keep[2] += kept_ref;
        let del_sys = if sc > oc { sc - oc } else { 0.0 };
        let del_ref = if sc > rc { sc - rc } else { 0.0 };
        del[0] += if del_sys < del_ref { del_sys } else { del_ref };
        del[1] += del_sys;
        del[2] += del_ref;
    }
    [add, keep, del]
}

/// `(source, output, references)`, each as whitespace tokens.
pub type Triple<'a> = (Vec<&'a str>, Vec<&'a str>, Vec<Vec<&'a str>>);

/// Corpus SARI `(overall, add, keep, delete)` on the 0–100 scale.
pub fn sari(corpus: &[Triple<'_>]) -> (f64, f64, f64, f64) {
    let mut totals = [[[0.0f64; 3]; 3]; 4];
    for (src, out, refs) in corpus {
        for n in 1..=4 {
            let c = sari_counts(src, out, refs, n);
            for op in 0..3 {
                for k in 0..3 {
                    totals[n - 1][op][k] += c[op][k];
                }
            }
        }
    }
    let div = |a: f64, b: f64| if b == 0.0 { 0.0 } else { a / b };
    let mut p = [0.0; 3];
    let mut rec = [0.0; 3];
    for n in 0..4 {
        for op in 0..3 {
            p[op] += div(totals[n][op][0], totals[n][op][1]) / 4.0;
            rec[op] += div(totals[n][op][0], totals[n][op][2]) / 4.0;
        }
    }
    let f = |a: f64, b: f64| if a + b == 0.0 { 0.0 } else { 2.0 * a * b / (a + b) };
    let add = 100.0 * f(p[0], rec[0]);
    let keep = 100.0 * f(p[1], rec[1]);
    let del = 100.0 * p[2];
    ((add + keep + del) / 3.0, add, keep, del)
}

/// `0.39 * words / sentences + 11.8 * syllables / words - 15.59`.
pub fn fkgl(sentences: usize, words: usize, syllables: usize) -> f64 {
    let w = words as f64;
    0.39 * w / sentences as f64 + 11.8 * syllables as f64 / w - 15.59
}

/// `candidate > current * t`.
pub fn gate(candidate: f64, current: f64, t: f64) -> bool {
    candidate > current * t
}
