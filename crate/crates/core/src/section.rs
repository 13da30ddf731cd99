//! Bergman-space operators on a complete Reinhardt domain in the orthonormal
//! monomial basis `e_{αβ} = z^α w^β / c_{αβ}`.
//!
//! Integration over the torus kills every pairing whose angular frequencies
//! differ, so inner products, projections and matrix entries all reduce to
//! moments.

use std::collections::HashMap;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::moments::MomentTable;
use crate::symbol::MonomialSymbol;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// `⟨f, g⟩_{L²(Ω)}`.
pub fn inner_product(table: &MomentTable, f: &MonomialSymbol, g: &MonomialSymbol) -> Result<Complex64> {
    let mut acc = ZERO;
    for ([a, b, c, d], k) in f.terms() {
        for ([a2, b2, c2, d2], k2) in g.terms() {
            // z^a z̄^b conj(z^a2 z̄^b2) = z^(a+b2) z̄^(b+a2), likewise in w.
            if a + b2 == b + a2 && c + d2 == d + c2 {
                acc += k * k2.conj() * table.moment(2 * (a + b2), 2 * (c + d2))?;
            }
        }
    }
    Ok(acc)
}

/// Bergman projection `P^Ω`.
pub fn project(table: &MomentTable, f: &MonomialSymbol) -> Result<MonomialSymbol> {
    let mut out = MonomialSymbol::zero();
    for ([a, b, c, d], k) in f.terms() {
        if a < b || c < d {
            continue;
        }
        let ratio = table.moment(2 * a, 2 * c)? / table.moment(2 * (a - b), 2 * (c - d))?;
        out.add_term(k * ratio, [a - b, 0, c - d, 0]);
    }
    Ok(out)
}

/// `H_φ f = φ f − P^Ω(φ f)`.
pub fn hankel(table: &MomentTable, phi: &MonomialSymbol, f: &MonomialSymbol) -> Result<MonomialSymbol> {
    let u = phi * f;
    Ok(&u - &project(table, &u)?)
}

/// Product identity check: `|⟨P(ψ̄ H_φ f), g⟩ − ⟨H_φ f, H_ψ g⟩|`.
pub fn verify_product_identity(
    table: &MomentTable,
    psi: &MonomialSymbol,
    phi: &MonomialSymbol,
    f: &MonomialSymbol,
    g: &MonomialSymbol,
) -> Result<f64> {
    if !f.is_holomorphic() {
        return Err(Error::NotHolomorphic { what: "f" });
    }
    if !g.is_holomorphic() {
        return Err(Error::NotHolomorphic { what: "g" });
    }
    let h_phi = hankel(table, phi, f)?;
    let lhs = inner_product(table, &project(table, &(&psi.conj() * &h_phi))?, g)?;
    let rhs = inner_product(table, &h_phi, &hankel(table, psi, g)?)?;
    Ok((lhs - rhs).norm())
}

/// Multi-indices `(α, β)` with `α ≤ n_z`, `β ≤ n_w`, ordered by `(α + β, α)`.
#[derive(Debug, Clone, PartialEq)]
pub struct IndexSet {
    n_z: u32,
    n_w: u32,
    indices: Vec<(u32, u32)>,
    position: HashMap<(u32, u32), usize>,
}

impl IndexSet {
    pub fn rectangle(n_z: u32, n_w: u32) -> Self {
        let mut indices: Vec<(u32, u32)> = (0..=n_z).flat_map(|a| (0..=n_w).map(move |b| (a, b))).collect();
        indices.sort_by_key(|&(a, b)| (a + b, a));
        let position = indices.iter().enumerate().map(|(i, &ab)| (ab, i)).collect();
        Self {
            n_z,
            n_w,
            indices,
            position,
        }
    }

    pub fn n_z(&self) -> u32 {
        self.n_z
    }

    pub fn n_w(&self) -> u32 {
        self.n_w
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn indices(&self) -> &[(u32, u32)] {
        &self.indices
    }

    pub fn position(&self, alpha: u32, beta: u32) -> Option<usize> {
        self.position.get(&(alpha, beta)).copied()
    }
}

/// Matrix of an operator from the span of `columns` to the span of `rows`.
#[derive(Debug, Clone)]
pub struct OperatorSection {
    pub rows: IndexSet,
    pub columns: IndexSet,
    pub entries: DMatrix<Complex64>,
    pub symbol_meta: String,
    pub padding: u32,
}

impl OperatorSection {
    pub fn index_map(&self) -> &[(u32, u32)] {
        self.columns.indices()
    }

    pub fn max_abs_entry(&self) -> f64 {
        self.entries.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }
}

/// `⟨T_φ e_{col}, e_{row}⟩` for all row and column indices.
fn toeplitz_matrix(
    table: &MomentTable,
    symbol: &MonomialSymbol,
    rows: &IndexSet,
    cols: &IndexSet,
) -> Result<DMatrix<Complex64>> {
    let terms: Vec<_> = symbol.terms().collect();
    let columns: Vec<Vec<(usize, Complex64)>> = cols
        .indices()
        .par_iter()
        .map(|&(alpha, beta)| {
            let c_col = table.monomial_norm(alpha, beta)?;
            let mut col: Vec<(usize, Complex64)> = Vec::new();
            for &([a, b, c, d], k) in &terms {
                let gamma = alpha as i64 + a as i64 - b as i64;
                let delta = beta as i64 + c as i64 - d as i64;
                if gamma < 0 || delta < 0 {
                    continue;
                }
                let Some(row) = rows.position(gamma as u32, delta as u32) else {
                    continue;
                };
                let c_row = table.monomial_norm(gamma as u32, delta as u32)?;
                let m = table.moment(2 * (alpha + a), 2 * (beta + c))?;
                col.push((row, k * (m / (c_col * c_row))));
            }
            Ok(col)
        })
        .collect::<Result<_>>()?;
    let mut out = DMatrix::from_element(rows.len(), cols.len(), ZERO);
    for (j, col) in columns.into_iter().enumerate() {
        for (i, v) in col {
            out[(i, j)] += v;
        }
    }
    Ok(out)
}

/// Section of `T_φ` from the rectangle `(n_z, n_w)` to the rectangle enlarged by
/// `padding` in both directions. With `padding ≥ φ.max_shift()` every column
/// is the complete image `T_φ e_{αβ}`; with `padding = 0` the section is square.
pub fn toeplitz_section(
    table: &MomentTable,
    symbol: &MonomialSymbol,
    n_z: u32,
    n_w: u32,
    padding: u32,
) -> Result<OperatorSection> {
    let columns = IndexSet::rectangle(n_z, n_w);
    let rows = IndexSet::rectangle(n_z + padding, n_w + padding);
    let entries = toeplitz_matrix(table, symbol, &rows, &columns)?;
    Ok(OperatorSection {
        rows,
        columns,
        entries,
        symbol_meta: format!("T[{symbol}]"),
        padding,
    })
}

/// Section of `H_ψ^* H_φ = T_{ψ̄φ} − T_{ψ̄} T_φ` on the rectangle `(n_z, n_w)`.
/// The product is formed through the rectangle padded by `φ`'s maximal shift,
/// so each retained entry is exact.
pub fn hankel_product_section(
    table: &MomentTable,
    psi: &MonomialSymbol,
    phi: &MonomialSymbol,
    n_z: u32,
    n_w: u32,
) -> Result<OperatorSection> {
    hankel_product_section_padded(table, psi, phi, n_z, n_w, phi.max_shift())
}

/// As [`hankel_product_section`] with an explicit padding, which must be at
/// least `φ.max_shift()`.
pub fn hankel_product_section_padded(
    table: &MomentTable,
    psi: &MonomialSymbol,
    phi: &MonomialSymbol,
    n_z: u32,
    n_w: u32,
    padding: u32,
) -> Result<OperatorSection> {
    if padding < phi.max_shift() {
        return Err(Error::InvalidParameter(format!(
            "padding {padding} is below the symbol shift {}",
            phi.max_shift()
        )));
    }
    let target = IndexSet::rectangle(n_z, n_w);
    let padded = IndexSet::rectangle(n_z + padding, n_w + padding);
    let psi_bar = psi.conj();
    let semi = toeplitz_matrix(table, &(&psi_bar * phi), &target, &target)?;
    let t_phi = toeplitz_matrix(table, phi, &padded, &target)?;
    let t_psi_bar = toeplitz_matrix(table, &psi_bar, &target, &padded)?;
    Ok(OperatorSection {
        rows: target.clone(),
        columns: target,
        entries: semi - t_psi_bar * t_phi,
        symbol_meta: format!("H*[{psi}] H[{phi}]"),
        padding,
    })
}

/// Section with entries `⟨H_φ e_k, H_ψ e_j⟩` computed from explicit Hankel images.
pub fn hankel_gram_section(
    table: &MomentTable,
    psi: &MonomialSymbol,
    phi: &MonomialSymbol,
    n_z: u32,
    n_w: u32,
) -> Result<OperatorSection> {
    let target = IndexSet::rectangle(n_z, n_w);
    let basis = |&(a, b): &(u32, u32)| -> Result<MonomialSymbol> {
        Ok(MonomialSymbol::monomial(1.0 / table.monomial_norm(a, b)?, [a, 0, b, 0]))
    };
    let images = |sym: &MonomialSymbol| -> Result<Vec<MonomialSymbol>> {
        target
            .indices()
            .par_iter()
            .map(|ab| hankel(table, sym, &basis(ab)?))
            .collect()
    };
    let h_phi = images(phi)?;
    let h_psi = images(psi)?;
    let n = target.len();
    let flat: Vec<Complex64> = (0..n * n)
        .into_par_iter()
        .map(|idx| inner_product(table, &h_phi[idx / n], &h_psi[idx % n]))
        .collect::<Result<_>>()?;
    // flat[k * n + j] = ⟨H_φ e_k, H_ψ e_j⟩, i.e. column-major storage.
    let entries = DMatrix::from_vec(n, n, flat);
    Ok(OperatorSection {
        rows: target.clone(),
        columns: target,
        entries,
        symbol_meta: format!("Gram[{psi}, {phi}]"),
        padding: 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::disk::{disk_product_section, DiskFunction};
    use crate::linalg::{hermitian_deviation, hermitian_eigenvalues};
    use crate::shadow::{build_shadow, DomainSpec, INTERSECTION_PRESET_RADIUS};
    use proptest::prelude::*;

    fn table(spec: DomainSpec) -> MomentTable {
        MomentTable::new(build_shadow(&spec).unwrap())
    }

    fn bidisk() -> MomentTable {
        table(DomainSpec::Bidisk { r_z: 1.0, r_w: 1.0 })
    }

    fn sym(s: &str) -> MonomialSymbol {
        s.parse().unwrap()
    }

    #[test]
    fn graded_ordering() {
        let idx = IndexSet::rectangle(2, 1);
        assert_eq!(idx.indices(), &[(0, 0), (0, 1), (1, 0), (1, 1), (2, 0), (2, 1)]);
        assert_eq!(idx.position(1, 1), Some(3));
        assert_eq!(idx.position(0, 2), None);
    }

    #[test]
    fn toeplitz_examples() {
        let t = bidisk();
        let s = toeplitz_section(&t, &MonomialSymbol::zbar(), 3, 2, 0).unwrap();
        let from = s.columns.position(1, 0).unwrap();
        let to = s.rows.position(0, 0).unwrap();
        assert!((s.entries[(to, from)].re - 0.5f64.sqrt()).abs() < 1e-14);
        let id = toeplitz_section(&t, &MonomialSymbol::constant(1.0), 4, 4, 0).unwrap();
        assert!((id.entries.clone() - DMatrix::identity(25, 25)).iter().all(|c| c.norm() < 1e-14));
        let tz = toeplitz_section(&t, &MonomialSymbol::z(), 4, 3, 0).unwrap();
        let tzb = toeplitz_section(&t, &MonomialSymbol::zbar(), 4, 3, 0).unwrap();
        assert!((tz.entries.adjoint() - tzb.entries).iter().all(|c| c.norm() < 1e-14));
    }

    #[test]
    fn bidisk_zbar_product_is_the_disk_section_in_each_fiber() {
        let t = bidisk();
        let n = 8;
        let s = hankel_product_section(&t, &MonomialSymbol::zbar(), &MonomialSymbol::zbar(), n, n).unwrap();
        let disk = disk_product_section(1.0, &DiskFunction::zbar(), &DiskFunction::zbar(), n as usize + 1);
        for &(a, b) in s.columns.indices() {
            for &(a2, b2) in s.rows.indices() {
                let got = s.entries[(s.rows.position(a2, b2).unwrap(), s.columns.position(a, b).unwrap())];
                let expect = if b == b2 { disk[(a2 as usize, a as usize)] } else { ZERO };
                assert!((got - expect).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn bidisk_mixed_pair_vanishes() {
        let t = bidisk();
        let s = hankel_product_section(&t, &MonomialSymbol::wbar(), &MonomialSymbol::zbar(), 6, 6).unwrap();
        assert!(s.max_abs_entry() <= 1e-12);
        let g = hankel_gram_section(&t, &MonomialSymbol::wbar(), &MonomialSymbol::zbar(), 6, 6).unwrap();
        assert!(g.max_abs_entry() <= 1e-12);
    }

    #[test]
    fn ball_zbar_diagonal() {
        let t = table(DomainSpec::Ball { radius: 1.0 });
        let s = hankel_product_section(&t, &MonomialSymbol::zbar(), &MonomialSymbol::zbar(), 6, 6).unwrap();
        for (i, &(a, b)) in s.columns.indices().iter().enumerate() {
            let n = (a + b) as f64;
            let expect = (b as f64 + 2.0) / ((n + 2.0) * (n + 3.0));
            assert!((s.entries[(i, i)].re - expect).abs() < 1e-13, "({a},{b})");
        }
        let eig = hermitian_eigenvalues(&s.entries).unwrap();
        assert!((eig[0] - 1.0 / 3.0).abs() < 1e-13);
    }

    #[test]
    fn product_route_matches_gram_route() {
        let shadows = [
            DomainSpec::Bidisk { r_z: 1.0, r_w: 1.0 },
            DomainSpec::Ball { radius: 1.0 },
            DomainSpec::Intersection {
                r_z: 1.0,
                r_w: 1.0,
                radius: INTERSECTION_PRESET_RADIUS,
            },
        ];
        let pairs = [("zbar", "zbar"), ("zbar*w + z", "wbar^2"), ("z^2*wbar + 0.5*zbar", "zbar*w")];
        for spec in shadows {
            let t = table(spec);
            for (p, q) in pairs {
                let a = hankel_product_section(&t, &sym(q), &sym(p), 4, 4).unwrap();
                let b = hankel_gram_section(&t, &sym(q), &sym(p), 4, 4).unwrap();
                let diff = (a.entries - b.entries).iter().map(|c| c.norm()).fold(0.0, f64::max);
                assert!(diff < 1e-12, "{p} / {q}: {diff}");
            }
        }
    }

    #[test]
    fn padding_beyond_the_shift_changes_nothing() {
        let t = table(DomainSpec::Ball { radius: 1.0 });
        let phi = sym("z^2*wbar + w^3");
        let psi = sym("zbar + w");
        let base = hankel_product_section(&t, &psi, &phi, 3, 3).unwrap();
        assert_eq!(base.padding, 3);
        for extra in 1..4 {
            let more = hankel_product_section_padded(&t, &psi, &phi, 3, 3, 3 + extra).unwrap();
            assert!((&more.entries - &base.entries).iter().all(|c| c.norm() < 1e-15));
        }
        assert!(hankel_product_section_padded(&t, &psi, &phi, 3, 3, 2).is_err());
    }

    #[test]
    fn product_identity_examples() {
        let t = bidisk();
        let one = MonomialSymbol::constant(1.0);
        let zb = MonomialSymbol::zbar();
        assert!(verify_product_identity(&t, &zb, &zb, &one, &one).unwrap() <= 1e-12);
        let h = hankel(&t, &zb, &one).unwrap();
        let v = inner_product(&t, &h, &h).unwrap().re / inner_product(&t, &one, &one).unwrap().re;
        assert!((v - 0.5).abs() < 1e-14);
        assert_eq!(verify_product_identity(&t, &zb, &MonomialSymbol::constant(2.0), &one, &one).unwrap(), 0.0);
    }

    fn arb_symbol() -> impl Strategy<Value = MonomialSymbol> {
        prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0, prop::array::uniform4(0u32..3)), 1..4)
            .prop_map(|ts| MonomialSymbol::from_terms(ts.into_iter().map(|(re, im, e)| (Complex64::new(re, im), e))))
    }

    fn arb_holomorphic() -> impl Strategy<Value = MonomialSymbol> {
        prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0, 0u32..4, 0u32..4), 1..4).prop_map(|ts| {
            MonomialSymbol::from_terms(ts.into_iter().map(|(re, im, a, c)| (Complex64::new(re, im), [a, 0, c, 0])))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn selection_rule(phi in arb_symbol(), which in 0usize..2) {
            let t = if which == 0 { bidisk() } else { table(DomainSpec::Ball { radius: 1.0 }) };
            let s = toeplitz_section(&t, &phi, 3, 3, 0).unwrap();
            let freqs: Vec<(i64, i64)> = phi.frequencies().collect();
            for (k, &(a, b)) in s.columns.indices().iter().enumerate() {
                for (j, &(g, d)) in s.rows.indices().iter().enumerate() {
                    let shift = (g as i64 - a as i64, d as i64 - b as i64);
                    if !freqs.contains(&shift) {
                        prop_assert_eq!(s.entries[(j, k)], ZERO);
                    }
                }
            }
        }

        #[test]
        fn self_products_are_positive_semidefinite(phi in arb_symbol()) {
            let t = table(DomainSpec::Ball { radius: 1.0 });
            let s = hankel_product_section(&t, &phi, &phi, 3, 3).unwrap();
            let scale = 1.0 + s.max_abs_entry();
            prop_assert!(hermitian_deviation(&s.entries) <= 1e-10 * scale);
            let eig = hermitian_eigenvalues(&s.entries).unwrap();
            prop_assert!(eig.iter().all(|&l| l >= -1e-10 * scale));
        }

        #[test]
        fn holomorphic_symbols_give_zero(phi in arb_holomorphic(), psi in arb_symbol()) {
            let t = bidisk();
            let s = hankel_product_section(&t, &psi, &phi, 3, 3).unwrap();
            prop_assert!(s.max_abs_entry() <= 1e-12 * (1.0 + phi.len() as f64 * 16.0));
        }

        #[test]
        fn product_identity_holds_on_random_instances(phi in arb_symbol(), psi in arb_symbol(), f in arb_holomorphic(), g in arb_holomorphic()) {
            let t = bidisk();
            prop_assert!(verify_product_identity(&t, &psi, &phi, &f, &g).unwrap() <= 1e-10);
        }
    }
}
