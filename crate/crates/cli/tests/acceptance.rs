//! Acceptance criteria, one line per criterion. Exits nonzero if any fails.

mod common;

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use flatlie::analysis::{is_semisimple, milnor_assemble, milnor_decompose, MilnorOutcome, NOT_FLAT};
use flatlie::connections::{
    check_left_homomorphism, curvature, is_complete, is_flat_affine, is_unimodular, left_traces, torsion, Product,
    ProductEntry,
};
use flatlie::constructions::{
    aff1, aff1_flat_product, catalog, central_extension, classical_cotangent, cotangent_coadjoint, double_extension,
    equivariance_check, heisenberg, heisenberg_flat_product, oscillator, phi_cocycle_check, r_rho_r3,
    r_rho_r3_flat_product, sl2, so3, theta_derivation_check, CatalogParams, OrthogonalAlgebra, SkewDerivationMap,
    CATALOG_NAMES,
};
use flatlie::linalg::{same_span, signature, unit_vector, Vector};
use flatlie::metrics::{
    biinvariant_levi_civita, is_flat_metric, is_invariant, is_levi_civita_of, is_two_nilpotent, levi_civita,
};
use flatlie::rational::{frac, int, one};
use flatlie::{LieAlgebra, Matrix, Rational, ScalarProduct};

type Outcome = Result<(), Vec<String>>;
type Criterion = (&'static str, &'static str, fn() -> Outcome);

/// Collects failed clauses instead of stopping at the first.
#[derive(Default)]
struct Clauses(Vec<String>);

impl Clauses {
    fn require(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.0.push(what.into());
        }
    }

    fn finish(self) -> Outcome {
        if self.0.is_empty() {
            Ok(())
        } else {
            Err(self.0)
        }
    }
}

fn product_from(alg: &Arc<LieAlgebra>, entries: Vec<ProductEntry>) -> Product {
    Product::new(Arc::clone(alg), entries).unwrap()
}

fn gram(rows: &[[i64; 3]]) -> ScalarProduct {
    ScalarProduct::new(Matrix::from_int_rows(rows)).unwrap()
}

fn sig(g: &ScalarProduct) -> (usize, usize, usize) {
    let s = g.signature();
    (s.index, s.plus, s.zero)
}

/// `−¼[[e_i, e_j], e_k]` against the curvature of `p` on every basis triple.
fn quarter_curvature_holds(a: &LieAlgebra, p: &Product) -> bool {
    let n = a.dim();
    let quarter = frac(-1, 4);
    let r = curvature(p);
    (0..n).all(|i| {
        (0..n).all(|j| {
            (0..n).all(|k| {
                let inner = a.basis_bracket(i, j).clone();
                let outer = a.bracket(&inner, &unit_vector(n, k)).unwrap();
                let expected: Vector = outer.iter().map(|c| c * &quarter).collect();
                r.at(i, j, k) == expected
            })
        })
    })
}

fn ac1() -> Outcome {
    let mut c = Clauses::default();
    let alg = Arc::new(aff1());
    let pair = levi_civita(&alg, &ScalarProduct::hyperbolic(1)).unwrap();
    let expected = product_from(&alg, vec![(0, 0, vec![(0, int(-1))]), (0, 1, vec![(1, one())])]);
    c.require(pair.product().same_coefficients(&expected), "product table");
    c.require(torsion(pair.product()).is_zero(), "torsion zero");
    c.require(curvature(pair.product()).is_zero(), "curvature zero");
    c.require(!is_complete(pair.product()).passed(), "not complete");
    c.require(!is_unimodular(&alg).passed(), "not unimodular");
    c.finish()
}

fn ac2() -> Outcome {
    let mut c = Clauses::default();
    let alg = Arc::new(heisenberg(1));
    let g = gram(&[[0, 0, 1], [0, 1, 0], [1, 0, 0]]);
    let pair = levi_civita(&alg, &g).unwrap();
    let expected = product_from(&alg, vec![(1, 0, vec![(2, int(-1))]), (1, 1, vec![(0, one())])]);
    if !pair.product().same_coefficients(&expected) {
        c.require(false, format!("product table: computed {:?}", pair.product()));
    }
    c.require(is_flat_metric(&pair).passed(), "flat");
    c.require(is_complete(pair.product()).passed(), "complete");
    c.require(is_unimodular(&alg).passed(), "unimodular");
    c.finish()
}

fn ac3() -> Outcome {
    let mut c = Clauses::default();
    let alg = Arc::new(aff1());
    let pair = levi_civita(&alg, &ScalarProduct::identity(2)).unwrap();
    let expected = product_from(&alg, vec![(1, 0, vec![(1, int(-1))]), (1, 1, vec![(0, one())])]);
    c.require(pair.product().same_coefficients(&expected), "product table");
    let witness = curvature(pair.product()).first_nonzero();
    c.require(witness.is_some(), "curvature witness");
    let flat = is_flat_metric(&pair);
    c.require(
        flat.first_failure().and_then(|f| f.witness.as_ref()).is_some(),
        "flat_metric reports a witness",
    );
    c.finish()
}

fn ac4() -> Outcome {
    let mut c = Clauses::default();
    let lambdas: [&[i64]; 4] = [&[1], &[1, 1], &[1, 2], &[1, 2, 3]];
    for l in lambdas {
        let lambda: Vec<Rational> = l.iter().map(|&x| int(x)).collect();
        let n = l.len();
        let osc = oscillator(&lambda).unwrap();
        let a = osc.algebra();
        c.require(a.check_jacobi().passed(), format!("{l:?} jacobi"));
        c.require(is_invariant(a, osc.form()).passed(), format!("{l:?} invariant"));
        c.require(sig(osc.form()) == (1, 2 * n + 1, 0), format!("{l:?} signature"));
        let bi = biinvariant_levi_civita(a);
        c.require(quarter_curvature_holds(a, &bi), format!("{l:?} curvature −¼[[x,y],z]"));
        let lc = levi_civita(a, osc.form()).unwrap();
        c.require(
            lc.product().same_coefficients(&bi),
            format!("{l:?} Levi-Civita is ½[,]"),
        );
        c.require(!is_two_nilpotent(a).passed(), format!("{l:?} not 2-nilpotent"));
        c.require(!is_flat_metric(&lc).passed(), format!("{l:?} not flat"));
        c.require(is_unimodular(a).passed(), format!("{l:?} unimodular"));
    }
    c.finish()
}

fn plane() -> OrthogonalAlgebra {
    OrthogonalAlgebra::new(Arc::new(LieAlgebra::abelian(2)), ScalarProduct::identity(2)).unwrap()
}

fn ac5() -> Outcome {
    let mut c = Clauses::default();
    let h = Arc::new(LieAlgebra::new("Re", vec!["e".into()], []).unwrap());
    let rotation = Matrix::from_int_rows(&[[0, -1], [1, 0]]);
    let psi = SkewDerivationMap::new(Arc::clone(&h), plane(), vec![rotation]).unwrap();
    let ext = double_extension(&plane(), &h, &psi).unwrap();
    let osc = oscillator(&[one()]).unwrap();
    c.require(
        ext.algebra().same_structure(osc.algebra()),
        "structure constants equal oscillator (1)",
    );
    c.require(ext.form() == osc.form(), "form equals μ₀");
    c.require(
        central_extension(&psi).same_structure(&heisenberg(1)),
        "intermediate is h3",
    );
    c.require(phi_cocycle_check(&psi).passed(), "Φ cocycle");
    c.require(theta_derivation_check(&psi).passed(), "Θ derivation");
    c.require(equivariance_check(&psi).passed(), "equivariance");
    c.require(sig(ext.form()) == (1, 3, 0), "signature (1,3)");
    c.finish()
}

fn ac6() -> Outcome {
    let mut c = Clauses::default();
    let t = cotangent_coadjoint(&heisenberg(1)).unwrap();
    c.require(t.algebra().check_jacobi().passed(), "T*h3 jacobi");
    c.require(is_invariant(t.algebra(), t.form()).passed(), "T*h3 invariant");
    c.require(sig(t.form()) == (3, 3, 0), "T*h3 signature (3,3)");
    let alg = Arc::new(aff1());
    let p = aff1_flat_product(Arc::clone(&alg), &int(0));
    match classical_cotangent(&alg, &p) {
        Ok(pair) => {
            c.require(is_flat_metric(&pair).passed(), "classical cotangent flat");
            c.require(sig(pair.form()) == (2, 2, 0), "classical cotangent signature (2,2)");
            let independent = levi_civita(pair.algebra(), &ScalarProduct::hyperbolic(2)).unwrap();
            c.require(
                independent.product().same_coefficients(pair.product()),
                "product equals levi_civita of the hyperbolic form",
            );
        }
        Err(e) => c.require(false, format!("classical_cotangent: {e}")),
    }
    c.finish()
}

fn ac7() -> Outcome {
    let mut c = Clauses::default();
    for h in [LieAlgebra::abelian(2), aff1(), heisenberg(1)] {
        let h = Arc::new(h);
        let maps = vec![Matrix::zeros(0, 0); h.dim()];
        let psi = SkewDerivationMap::new(Arc::clone(&h), OrthogonalAlgebra::trivial(), maps).unwrap();
        let ext = double_extension(&OrthogonalAlgebra::trivial(), &h, &psi).unwrap();
        let cot = cotangent_coadjoint(&h).unwrap();
        c.require(
            ext.algebra().same_structure(cot.algebra()),
            format!("{} brackets", h.name()),
        );
        c.require(ext.form() == cot.form(), format!("{} form", h.name()));
    }
    c.finish()
}

fn rotation_block(u_dim: usize, plane: usize, angle: &Rational) -> Matrix {
    let mut m = Matrix::zeros(u_dim, u_dim);
    m[(2 * plane + 1, 2 * plane)] = angle.clone();
    m[(2 * plane, 2 * plane + 1)] = -angle.clone();
    m
}

fn ac8() -> Outcome {
    let mut c = Clauses::default();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut specs: Vec<(usize, Vec<Matrix>)> = vec![(1, vec![rotation_block(2, 0, &one())])];
    for _ in 0..12 {
        let planes = rng.gen_range(1..=3usize);
        let u_dim = 2 * planes;
        let b_dim = rng.gen_range(1..=planes);
        // Action b_i rotates plane i, plus a random combination of the others; the
        // diagonal part keeps the actions independent and the kernel on u trivial.
        let actions = (0..b_dim)
            .map(|i| {
                let mut m = rotation_block(u_dim, i, &int(rng.gen_range(1..=3)));
                for p in b_dim..planes {
                    m = &m + &rotation_block(u_dim, p, &frac(rng.gen_range(-3..=3), rng.gen_range(1..=2)));
                }
                m
            })
            .collect();
        specs.push((b_dim, actions));
    }
    for (b_dim, actions) in specs {
        let u_dim = actions[0].rows();
        let n = b_dim + u_dim;
        let g = ScalarProduct::identity(n);
        let (alg, _) = match milnor_assemble(b_dim, u_dim, &actions, &g) {
            Ok(x) => x,
            Err(e) => {
                c.require(false, format!("assemble b={b_dim} u={u_dim}: {e}"));
                continue;
            }
        };
        match milnor_decompose(&alg, &g).unwrap() {
            MilnorOutcome::Decomposed(d) => {
                let u: Vec<Vector> = (b_dim..n).map(|i| unit_vector(n, i)).collect();
                let b: Vec<Vector> = (0..b_dim).map(|i| unit_vector(n, i)).collect();
                c.require(
                    same_span(&d.u_basis, &u, n) && same_span(&d.b_basis, &b, n),
                    format!("round trip b={b_dim} u={u_dim}"),
                );
            }
            MilnorOutcome::Failure { reason, .. } => c.require(false, format!("decompose b={b_dim}: {reason}")),
        }
    }
    match milnor_decompose(&Arc::new(aff1()), &ScalarProduct::identity(2)).unwrap() {
        MilnorOutcome::Failure { reason, .. } => c.require(reason == NOT_FLAT, format!("aff reason {reason:?}")),
        MilnorOutcome::Decomposed(_) => c.require(false, "aff with identity form must fail"),
    }
    c.finish()
}

fn ac9() -> Outcome {
    let mut c = Clauses::default();
    let aff = Arc::new(aff1());
    for alpha in [0, 1, -2] {
        let p = aff1_flat_product(Arc::clone(&aff), &int(alpha));
        c.require(is_flat_affine(&p).passed(), format!("aff α={alpha}"));
    }
    let h3 = Arc::new(heisenberg(1));
    c.require(is_flat_affine(&heisenberg_flat_product(h3)).passed(), "h3");
    let r = Arc::new(r_rho_r3());
    for alpha in [0, 1] {
        let p = r_rho_r3_flat_product(Arc::clone(&r), &int(alpha));
        c.require(is_flat_affine(&p).passed(), format!("r_rho_r3 α={alpha}"));
    }
    c.finish()
}

fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    frac(rng.gen_range(-4..=4), rng.gen_range(1..=3))
}

fn random_invertible(rng: &mut ChaCha8Rng, n: usize) -> Matrix {
    loop {
        let rows = (0..n).map(|_| (0..n).map(|_| small_rational(rng)).collect()).collect();
        let m = Matrix::from_rows(rows).unwrap();
        if m.rank() == n {
            return m;
        }
    }
}

fn random_symmetric(rng: &mut ChaCha8Rng, n: usize) -> Matrix {
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let v = small_rational(rng);
            m[(i, j)] = v.clone();
            m[(j, i)] = v;
        }
    }
    m
}

fn random_form(rng: &mut ChaCha8Rng, n: usize) -> ScalarProduct {
    loop {
        if let Ok(g) = ScalarProduct::new(random_symmetric(rng, n)) {
            return g;
        }
    }
}

/// The same metric Lie algebra written in a random basis.
fn rebase(rng: &mut ChaCha8Rng, a: &LieAlgebra, g: &ScalarProduct) -> (Arc<LieAlgebra>, ScalarProduct) {
    let s = random_invertible(rng, a.dim());
    (Arc::new(a.change_basis(&s).unwrap()), g.congruent(&s).unwrap())
}

fn base_algebras() -> Vec<LieAlgebra> {
    vec![aff1(), heisenberg(1), r_rho_r3(), sl2(), so3(), LieAlgebra::abelian(3)]
}

/// Known flat pseudo-Riemannian examples.
fn flat_seed(rng: &mut ChaCha8Rng) -> (LieAlgebra, ScalarProduct) {
    match rng.gen_range(0..4) {
        0 => (aff1(), ScalarProduct::hyperbolic(1)),
        1 => (heisenberg(1), gram(&[[1, 0, 0], [0, 0, 1], [0, 1, 0]])),
        2 => {
            let angle = small_rational(rng);
            let mut action = rotation_block(2, 0, &angle);
            if angle == int(0) {
                action = rotation_block(2, 0, &one());
            }
            let (alg, pair) = milnor_assemble(1, 2, &[action], &ScalarProduct::identity(3)).unwrap();
            ((*alg).clone(), pair.form().clone())
        }
        _ => {
            let alg = Arc::new(aff1());
            let p = aff1_flat_product(Arc::clone(&alg), &small_rational(rng));
            let pair = classical_cotangent(&alg, &p).unwrap();
            ((**pair.algebra()).clone(), pair.form().clone())
        }
    }
}

/// Known orthogonal (invariant-form) examples.
fn invariant_seed(rng: &mut ChaCha8Rng) -> OrthogonalAlgebra {
    match rng.gen_range(0..4) {
        0 => {
            let mut l: Vec<Rational> = (0..rng.gen_range(1..=2))
                .map(|_| frac(rng.gen_range(1..=4), rng.gen_range(1..=2)))
                .collect();
            l.sort();
            oscillator(&l).unwrap()
        }
        1 => {
            let pool = [aff1(), heisenberg(1), LieAlgebra::abelian(2)];
            let a = &pool[rng.gen_range(0..pool.len())];
            cotangent_coadjoint(a).unwrap()
        }
        2 => {
            let a = Arc::new(sl2());
            let k = a.killing_form().scale(&small_rational_nonzero(rng));
            OrthogonalAlgebra::new(a, ScalarProduct::new(k).unwrap()).unwrap()
        }
        _ => {
            let a = Arc::new(so3());
            let k = a.killing_form().scale(&small_rational_nonzero(rng));
            OrthogonalAlgebra::new(a, ScalarProduct::new(k).unwrap()).unwrap()
        }
    }
}

fn small_rational_nonzero(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let r = small_rational(rng);
        if r != int(0) {
            return r;
        }
    }
}

const AC10_CASES: usize = 200;

fn ac10() -> Outcome {
    let mut c = Clauses::default();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let pool = base_algebras();
    for case in 0..AC10_CASES {
        // Koszul output is torsion-free and compatible.
        let a = &pool[rng.gen_range(0..pool.len())];
        let g = random_form(&mut rng, a.dim());
        let (a, g) = rebase(&mut rng, a, &g);
        let pair = levi_civita(&a, &g).unwrap();
        c.require(
            is_levi_civita_of(pair.product(), &g).passed(),
            format!("case {case}: koszul"),
        );
        check_flat_consequences(&mut c, case, &pair);

        // Flat metrics: homomorphism, traceless L, complete ⇔ unimodular.
        let (fa, fg) = flat_seed(&mut rng);
        let (fa, fg) = rebase(&mut rng, &fa, &fg);
        let pair = levi_civita(&fa, &fg).unwrap();
        c.require(
            is_flat_metric(&pair).passed(),
            format!("case {case}: flat seed stays flat"),
        );
        check_flat_consequences(&mut c, case, &pair);

        // Invariant forms: Levi-Civita is ½[,], curvature −¼[[x,y],z], flat ⇔ 2-nilpotent.
        let o = invariant_seed(&mut rng);
        let (ia, ig) = rebase(&mut rng, o.algebra(), o.form());
        c.require(
            is_invariant(&ia, &ig).passed(),
            format!("case {case}: rebased form invariant"),
        );
        let pair = levi_civita(&ia, &ig).unwrap();
        c.require(
            pair.product().same_coefficients(&biinvariant_levi_civita(&ia)),
            format!("case {case}: invariant Levi-Civita is ½[,]"),
        );
        c.require(
            quarter_curvature_holds(&ia, pair.product()),
            format!("case {case}: −¼ curvature"),
        );
        c.require(
            is_flat_metric(&pair).passed() == is_two_nilpotent(&ia).passed(),
            format!("case {case}: flat ⇔ 2-nilpotent"),
        );

        // Signature congruence invariance, degenerate matrices included.
        let n = rng.gen_range(1..=5);
        let m = random_symmetric(&mut rng, n);
        let s = random_invertible(&mut rng, n);
        let moved = &(&s.transpose() * &m) * &s;
        c.require(
            signature(&moved).unwrap() == signature(&m).unwrap(),
            format!("case {case}: signature congruence"),
        );
    }
    c.finish()
}

fn check_flat_consequences(c: &mut Clauses, case: usize, pair: &flatlie::MetricPair) {
    if !is_flat_metric(pair).passed() {
        return;
    }
    let p = pair.product();
    c.require(
        check_left_homomorphism(p).passed(),
        format!("case {case}: L homomorphism"),
    );
    c.require(
        left_traces(p).iter().all(|t| *t == int(0)),
        format!("case {case}: tr L_x = 0"),
    );
    c.require(
        is_complete(p).passed() == is_unimodular(pair.algebra()).passed(),
        format!("case {case}: complete ⇔ unimodular"),
    );
}

fn ac11() -> Outcome {
    let mut c = Clauses::default();
    let entry = catalog("sl2", &CatalogParams::default()).unwrap();
    let a = entry.algebra;
    c.require(is_semisimple(&a).passed(), "sl2 semisimple");
    let mut candidates = vec![
        ("ad".to_string(), Product::scaled_bracket(Arc::clone(&a), &one())),
        ("½ad".to_string(), Product::scaled_bracket(Arc::clone(&a), &frac(1, 2))),
    ];
    // ½[x,y] + S(x,y) with S symmetric is always bracket-compatible.
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let half = Product::scaled_bracket(Arc::clone(&a), &frac(1, 2));
    for t in 0..24 {
        let mut sym = vec![vec![Rational::from_integer(0.into()); 3]; 9];
        for i in 0..3 {
            for j in i..3 {
                let v: Vec<Rational> = (0..3).map(|_| small_rational(&mut rng)).collect();
                sym[i * 3 + j] = v.clone();
                sym[j * 3 + i] = v;
            }
        }
        let p = Product::from_rule(Arc::clone(&a), |i, j| {
            half.basis_product(i, j)
                .iter()
                .zip(&sym[i * 3 + j])
                .map(|(x, y)| x + y)
                .collect()
        });
        candidates.push((format!("perturbation {t}"), p));
    }
    for (name, p) in &candidates {
        c.require(!is_flat_affine(p).passed(), format!("{name} must fail flat affine"));
    }
    c.finish()
}

fn ac12() -> Outcome {
    let mut c = Clauses::default();
    for m in common::corpus_mismatches() {
        c.require(false, m);
    }
    for m in common::non_canonical_inputs() {
        c.require(false, m);
    }
    let mut names = Vec::new();
    let mut manifests = 0;
    for entry in std::fs::read_dir(common::corpus_dir().join("inputs")).unwrap() {
        let text = std::fs::read_to_string(entry.unwrap().path()).unwrap();
        if let Ok(m) = flatlie_cli::parse_manifest(&text) {
            manifests += 1;
            names.push(m.algebra.name().to_string());
        }
    }
    c.require(manifests >= 10, format!("only {manifests} manifests"));
    for cat in CATALOG_NAMES {
        c.require(
            names.iter().any(|n| n.starts_with(cat)),
            format!("no manifest for catalog {cat}"),
        );
    }
    c.finish()
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("AC1", "Levi-Civita of aff(R), hyperbolic form", ac1),
        ("AC2", "Levi-Civita of h3, xz pairing", ac2),
        ("AC3", "aff(R) Euclidean metric is not flat", ac3),
        ("AC4", "oscillator suite", ac4),
        ("AC5", "double extension reconstructs the oscillator", ac5),
        ("AC6", "cotangent constructions", ac6),
        ("AC7", "double extension over {0} is the cotangent", ac7),
        ("AC8", "Milnor decomposition", ac8),
        ("AC9", "flat affine catalog", ac9),
        ("AC10", "randomized property suite (200 seeded cases)", ac10),
        ("AC11", "sl2 semisimple, no flat affine candidate", ac11),
        ("AC12", "CLI golden corpus is deterministic", ac12),
    ];
    let mut failed = 0;
    for (id, title, f) in criteria {
        match f() {
            Ok(()) => println!("{id:<5} pass  {title}"),
            Err(why) => {
                failed += 1;
                println!("{id:<5} FAIL  {title}");
                for w in why.iter().take(8) {
                    println!("        - {w}");
                }
                if why.len() > 8 {
                    println!("        ... {} more", why.len() - 8);
                }
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
