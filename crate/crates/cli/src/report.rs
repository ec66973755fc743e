//! Plain-text reports. Every number is printed with a fixed format so output
//! is byte-for-byte reproducible.

use std::fmt::Write as _;

use affine_moduli_core::curvature::{ricci, signature_with, symmetric_ricci};
use affine_moduli_core::genericity::generic_poly;
use affine_moduli_core::symmetry::{
    finite_symmetry_scan, smith_invariants, stabilizer_lie_algebra, support_pattern, torsion_order_bound, Order,
    RelationLattice,
};
use affine_moduli_core::{Christoffel, Matrix, Result, Tolerances};

use crate::document::Metadata;

pub const SIGNATURE_LEGEND: &str = "p = negative/timelike, q = positive/spacelike";

pub fn matrix(out: &mut String, a: &Matrix) {
    for i in 0..a.rows() {
        out.push_str("  [");
        for j in 0..a.cols() {
            let _ = write!(out, "{}{:>24.16e}", if j > 0 { " " } else { "" }, a[(i, j)]);
        }
        out.push_str(" ]\n");
    }
}

fn header(out: &mut String, meta: &Metadata, m: usize) {
    if let Some(f) = &meta.family {
        let _ = write!(out, "structure: {f}");
        if let Some(p) = &meta.params {
            let ps: Vec<String> = p.iter().map(|x| format!("{x}")).collect();
            let _ = write!(out, " [{}]", ps.join(", "));
        }
        out.push('\n');
    }
    let _ = writeln!(out, "m = {m}");
}

/// `tol` scales the relative thresholds (signature zero band, rank cut,
/// torsion-freeness, support) together; `None` uses the defaults.
pub fn analyze(g: &Christoffel, meta: &Metadata, tol: Option<f64>) -> Result<String> {
    let t = Tolerances::DEFAULT;
    let mut out = String::new();
    header(&mut out, meta, g.m());
    let rho = ricci(g);
    let rs = symmetric_ricci(g);
    out.push_str("ricci:\n");
    matrix(&mut out, &rho.0);
    out.push_str("symmetric ricci:\n");
    matrix(&mut out, rs.matrix());
    let sig = signature_with(&rs, tol.unwrap_or(t.signature_rel), t.signature_floor)?;
    if sig.degenerate {
        let _ = writeln!(
            out,
            "signature: degenerate Ricci ({} negative, {} positive, {} zero)",
            sig.p,
            sig.q,
            g.m() - sig.p - sig.q
        );
    } else {
        let _ = writeln!(out, "signature ({},{})  [{SIGNATURE_LEGEND}]", sig.p, sig.q);
    }
    let tf = g.is_torsion_free(tol.unwrap_or(t.equality) * (1.0 + g.max_abs()));
    let _ = writeln!(out, "torsion-free: {}", if tf { "yes" } else { "no" });
    let gp = generic_poly(g);
    let _ = writeln!(out, "genericity polynomial: {:.16e} (threshold {:.3e})", gp.poly_value, gp.tol_generic);
    let _ = writeln!(out, "generic: {}", if gp.generic { "yes" } else { "no" });
    let st = stabilizer_lie_algebra(g, tol.unwrap_or(t.rank));
    let _ = writeln!(out, "stabilizer dim {} (spectral gap {:.3e})", st.lie_dimension, st.spectral_gap);
    let pat = support_pattern(g, tol.unwrap_or(t.equality) * (1.0 + g.max_abs()));
    let _ = writeln!(
        out,
        "torsion order bound: {} (real-basis support, {} entries)",
        torsion_order_bound(&pat)?,
        pat.count()
    );
    Ok(out)
}

pub fn stabilizer(g: &Christoffel, tol: Option<f64>, restarts: usize, seed: u64) -> Result<String> {
    let t = Tolerances::DEFAULT;
    let mut out = String::new();
    let st = stabilizer_lie_algebra(g, tol.unwrap_or(t.rank));
    let _ = writeln!(out, "stabilizer dim {}", st.lie_dimension);
    let _ = writeln!(out, "spectral gap {:.3e}", st.spectral_gap);
    let sv: Vec<String> = st.singular_values.iter().map(|s| format!("{s:.6e}")).collect();
    let _ = writeln!(out, "singular values: {}", sv.join(" "));
    for (n, x) in st.lie_basis.iter().enumerate() {
        let _ = writeln!(out, "basis[{n}]:");
        matrix(&mut out, x);
    }
    if restarts > 0 {
        match finite_symmetry_scan(g, restarts, seed) {
            Ok(hits) => {
                let _ = writeln!(out, "finite scan: {} element(s) from {restarts} restarts (seed {seed})", hits.len());
                for (n, h) in hits.iter().enumerate() {
                    let ord = match h.order {
                        Order::Finite(k) => k.to_string(),
                        Order::Unbounded => "unbounded".to_string(),
                    };
                    let _ = writeln!(out, "element[{n}]: order {ord}, residual {:.3e}", h.residual);
                    matrix(&mut out, h.map.matrix());
                }
            }
            Err(e) => {
                let _ = writeln!(out, "finite scan skipped: {e}");
            }
        }
    }
    Ok(out)
}

pub fn torsion(g: &Christoffel, tol: Option<f64>) -> Result<String> {
    let t = Tolerances::DEFAULT;
    let pat = support_pattern(g, tol.unwrap_or(t.equality) * (1.0 + g.max_abs()));
    relations(&RelationLattice::from_pattern(&pat).relations, g.m())
}

pub fn relations(rows: &[Vec<i64>], m: usize) -> Result<String> {
    let inv = smith_invariants(rows, m)?;
    let mut out = String::new();
    let _ = writeln!(out, "relations: {}", rows.len());
    let s: Vec<String> = inv.iter().map(i64::to_string).collect();
    let _ = writeln!(out, "invariant factors: [{}]", s.join(", "));
    let _ = writeln!(out, "free rank: {}", m - inv.len());
    let bound = inv.iter().copied().max().unwrap_or(1).max(1);
    let _ = writeln!(out, "torsion order bound: {bound}");
    Ok(out)
}
