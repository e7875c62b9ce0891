//! Named, seeded checks of the structural identities over random module
//! batteries, with JSON and text reports.

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homol::{
    is_intertwiner, is_isomorphic, is_projective_a, is_projective_head, is_projective_socle, omega, omega_inv,
    tensor_is_projective, Isomorphism,
};
use crate::hopf::{AlgebraElement, AntipodeConvention, HopfAlgebra};
use crate::io::ModuleFile;
use crate::rep::{
    character_sum, conjugation_witness, derive_seed, dsum, dual, dual_inv, induce_r, induction_witnesses,
    projective_indecomposable, random_module, regular_rep, restrict_to_r, restrict_to_rq, simple, tensor, trivial,
    twist_g, Char, ModuleRep, Recipe,
};
use crate::scalars::{Fe, FieldCtx, Mat};
use crate::variety::{
    carlson_module, diagonal_check, diagonal_point, enumerate_points, orbit_canonical, orbit_representatives,
    outer_tensor, point_is_projective, rank_variety, rank_variety_all_points, rank_variety_r, rank_variety_rq,
    variety_cap, PPoint, VarietySet,
};

/// The `(p, ell, n)` triples checked by default.
pub const DEFAULT_CONFIGS: [(u32, u32, usize); 4] = [(5, 2, 2), (7, 3, 2), (5, 2, 3), (11, 5, 2)];

/// Suite names in execution order.
pub const SUITES: [&str; 14] = [
    "hopf",
    "structure",
    "trivial",
    "conjugate",
    "simples",
    "duality",
    "tensor",
    "omega",
    "induction",
    "diagonal",
    "carlson",
    "twist",
    "thickwitness",
    "projectivity",
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub p: u32,
    pub ell: u32,
    pub n: usize,
    pub seed: u64,
    /// Number of random modules in the battery.
    pub battery: usize,
    pub degrees: Vec<u32>,
    pub iso_trials: usize,
    /// Largest dimension of a battery module.
    pub size_budget: usize,
    /// Largest dimension of a tensor product formed from battery modules.
    pub max_tensor_dim: usize,
    pub pairs: usize,
    pub structure_points: usize,
    pub carlson_points: usize,
    pub diagonal_triples: usize,
    pub workers: usize,
    /// Corrupts one tensor product in the tensor suite.
    pub inject_fault: bool,
    /// Uses `S(g_i) = -g_i^{-1}` in the Hopf suite.
    pub negated_antipode: bool,
}

impl SuiteConfig {
    pub fn new(p: u32, ell: u32, n: usize) -> SuiteConfig {
        let group = (ell as usize).pow(n as u32);
        SuiteConfig {
            p,
            ell,
            n,
            seed: 1,
            battery: 20,
            degrees: vec![1, 2],
            iso_trials: crate::homol::DEFAULT_ISO_TRIALS,
            size_budget: if group > 16 { 30 } else { 20 },
            max_tensor_dim: 400,
            pairs: 20,
            structure_points: 100,
            carlson_points: 10,
            diagonal_triples: 50,
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
            inject_fault: false,
            negated_antipode: false,
        }
    }

    pub fn validate(&self) -> Result<Arc<FieldCtx>> {
        let positive = [
            ("battery", self.battery),
            ("iso-trials", self.iso_trials),
            ("size-budget", self.size_budget),
            ("max-tensor-dim", self.max_tensor_dim),
            ("pairs", self.pairs),
            ("structure-points", self.structure_points),
            ("carlson-points", self.carlson_points),
            ("diagonal-triples", self.diagonal_triples),
            ("workers", self.workers),
        ];
        for (name, v) in positive {
            if v == 0 {
                return Err(Error::Format(format!("{name} must be positive")));
            }
        }
        if self.degrees.is_empty() || self.degrees.contains(&0) {
            return Err(Error::BadDegree);
        }
        FieldCtx::new(self.p, self.ell, self.n)
    }
}

/// A failing case with what is needed to reproduce it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub case: String,
    pub message: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<u32>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub recipes: Vec<Recipe>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub modules: Vec<ModuleFile>,
}

impl Failure {
    fn new(case: impl Into<String>, message: impl Into<String>) -> Failure {
        Failure {
            case: case.into(),
            message: message.into(),
            lambda: None,
            degree: None,
            recipes: Vec::new(),
            modules: Vec::new(),
        }
    }

    fn module(mut self, label: &str, m: &ModuleRep) -> Failure {
        self.modules.push(ModuleFile::from_module(m, Some(label.to_string())));
        self
    }

    fn item(self, item: &BatteryItem) -> Failure {
        let mut f = self.module(&format!("battery[{}]", item.index), &item.module);
        f.recipes.push(item.recipe.clone());
        f
    }

    fn point(mut self, p: &PPoint) -> Failure {
        self.lambda = Some(p.codes());
        self.degree = Some(p.degree());
        self
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub p: u32,
    pub ell: u32,
    pub n: usize,
    pub seed: u64,
    pub cases: usize,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub failures: Vec<Failure>,
    /// Wall time; kept out of the serialized report so that reports are
    /// reproducible byte for byte.
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunReport {
    pub passed: bool,
    pub reports: Vec<SuiteReport>,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for r in &self.reports {
            s.push_str(&r.summary_line());
            s.push('\n');
            for note in &r.notes {
                s.push_str(&format!("    note: {note}\n"));
            }
            for f in &r.failures {
                let at = match (&f.lambda, f.degree) {
                    (Some(l), Some(e)) => format!(" at λ = {l:?} (e = {e})"),
                    _ => String::new(),
                };
                s.push_str(&format!("    FAIL {}: {}{}\n", f.case, f.message, at));
            }
        }
        s.push_str(if self.passed { "overall: PASS\n" } else { "overall: FAIL\n" });
        s
    }
}

impl SuiteReport {
    pub fn summary_line(&self) -> String {
        format!(
            "[{}] {:<13} (p={}, ell={}, n={}): {} cases, {} failures",
            if self.passed { "PASS" } else { "FAIL" },
            self.suite,
            self.p,
            self.ell,
            self.n,
            self.cases,
            self.failures.len()
        )
    }
}

/// A battery module and how it was made.
#[derive(Clone, Debug)]
pub struct BatteryItem {
    pub index: usize,
    pub seed: u64,
    pub recipe: Recipe,
    pub module: ModuleRep,
}

/// Shared state for the suites of one configuration: the battery and
/// lazily computed varieties.
pub struct Harness {
    cfg: SuiteConfig,
    ctx: Arc<FieldCtx>,
    battery: OnceLock<Vec<BatteryItem>>,
    varieties: OnceLock<Vec<VarietySet>>,
}

#[derive(Default)]
struct Outcome {
    cases: usize,
    failures: Vec<Failure>,
    notes: Vec<String>,
}

impl Outcome {
    fn check(&mut self, ok: bool, failure: impl FnOnce() -> Failure) {
        self.cases += 1;
        if !ok {
            self.failures.push(failure());
        }
    }

    fn absorb(&mut self, results: Vec<(usize, Vec<Failure>)>) {
        for (cases, failures) in results {
            self.cases += cases;
            self.failures.extend(failures);
        }
    }
}

/// Per-case collector used inside parallel closures.
#[derive(Default)]
struct Local {
    cases: usize,
    failures: Vec<Failure>,
}

impl Local {
    fn check(&mut self, ok: bool, failure: impl FnOnce() -> Failure) {
        self.cases += 1;
        if !ok {
            self.failures.push(failure());
        }
    }

    fn done(self) -> (usize, Vec<Failure>) {
        (self.cases, self.failures)
    }
}

/// The first point in the symmetric difference of two varieties.
fn first_difference(v: &VarietySet, w: &VarietySet) -> Option<PPoint> {
    for (e, s) in v.sets() {
        let empty = Default::default();
        let t = w.at(*e).unwrap_or(&empty);
        if let Some(p) = s.symmetric_difference(t).next() {
            return Some(p.clone());
        }
    }
    None
}

fn variety_failure(case: String, what: &str, v: &VarietySet, w: &VarietySet) -> Failure {
    let f = Failure::new(case, format!("{what}: {} vs {} orbits", v.len(), w.len()));
    match first_difference(v, w) {
        Some(p) => f.point(&p),
        None => f,
    }
}

impl Harness {
    pub fn new(cfg: SuiteConfig) -> Result<Harness> {
        let ctx = cfg.validate()?;
        Ok(Harness { cfg, ctx, battery: OnceLock::new(), varieties: OnceLock::new() })
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn config(&self) -> &SuiteConfig {
        &self.cfg
    }

    pub fn battery(&self) -> &[BatteryItem] {
        self.battery.get_or_init(|| {
            (0..self.cfg.battery)
                .into_par_iter()
                .map(|i| {
                    let seed = derive_seed(self.cfg.seed, i as u64);
                    let (recipe, module) =
                        random_module(&self.ctx, seed, self.cfg.size_budget).expect("budget is positive");
                    BatteryItem { index: i, seed, recipe, module }
                })
                .collect()
        })
    }

    fn varieties(&self) -> &[VarietySet] {
        self.varieties.get_or_init(|| {
            self.battery()
                .par_iter()
                .map(|b| rank_variety(&b.module, &self.cfg.degrees).expect("valid degrees"))
                .collect()
        })
    }

    fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(derive_seed(self.cfg.seed, salt))
    }

    fn random_point(&self, rng: &mut ChaCha8Rng) -> PPoint {
        let p = self.ctx.p();
        loop {
            let v: Vec<Fe> = (0..self.ctx.n()).map(|_| Fe(rng.gen_range(0..p))).collect();
            if let Ok(pt) = PPoint::new(self.ctx.base(), v) {
                return pt;
            }
        }
    }

    /// Index pairs `i < j` with `dim M_i * dim M_j` within the tensor cap,
    /// in a seeded random order.
    fn pairs(&self, salt: u64) -> Vec<(usize, usize)> {
        let b = self.battery();
        let mut out = Vec::new();
        for i in 0..b.len() {
            for j in i + 1..b.len() {
                if b[i].module.dim() * b[j].module.dim() <= self.cfg.max_tensor_dim {
                    out.push((i, j));
                }
            }
        }
        out.shuffle(&mut self.rng(salt));
        out
    }

    pub fn run(&self, suite: &str) -> Result<SuiteReport> {
        let start = Instant::now();
        let outcome = match suite {
            "hopf" => self.suite_hopf_axioms(),
            "structure" => self.suite_structure(),
            "trivial" => self.suite_trivial(),
            "conjugate" => self.suite_conjugate(),
            "simples" => self.suite_simples(),
            "duality" => self.suite_duality(),
            "tensor" => self.suite_tensor(),
            "omega" => self.suite_omega(),
            "induction" => self.suite_induction(),
            "diagonal" => self.suite_diagonal(),
            "carlson" => self.suite_carlson(),
            "twist" => self.suite_twist(),
            "thickwitness" => self.suite_thickwitness(),
            "projectivity" => self.suite_projectivity(),
            other => return Err(Error::UnknownSuite(other.to_string())),
        };
        Ok(SuiteReport {
            suite: suite.to_string(),
            p: self.cfg.p,
            ell: self.cfg.ell,
            n: self.cfg.n,
            seed: self.cfg.seed,
            cases: outcome.cases,
            passed: outcome.failures.is_empty(),
            notes: outcome.notes,
            failures: outcome.failures,
            elapsed: start.elapsed(),
        })
    }

    fn suite_hopf_axioms(&self) -> Outcome {
        let convention = if self.cfg.negated_antipode {
            AntipodeConvention::NegatedGrouplike
        } else {
            AntipodeConvention::Axiomatic
        };
        let alg = HopfAlgebra::with_antipode(&self.ctx, convention);
        let basis = alg.basis();
        let results: Vec<(usize, Vec<Failure>)> = basis
            .par_iter()
            .map(|m| {
                let mut l = Local::default();
                let name = format!("{m:?}");
                l.check(alg.coassociative_on(m), || Failure::new(format!("coassociativity on {name}"), "fails"));
                l.check(alg.counital_on(m), || Failure::new(format!("counit on {name}"), "fails"));
                l.check(alg.antipode_axiom_on(m), || Failure::new(format!("antipode on {name}"), "fails"));
                l.check(alg.antipode_square_is_inner_on(m), || {
                    Failure::new(format!("S^2 inner on {name}"), "S^2 is not conjugation by (g_1..g_n)^-1")
                });
                l.done()
            })
            .collect();
        let mut out = Outcome::default();
        out.absorb(results);
        // Multiplicativity of Δ on seeded random pairs of basis elements and
        // of small linear combinations.
        let mut rng = self.rng(0x40);
        let f = self.ctx.base();
        let random_element = |rng: &mut ChaCha8Rng| {
            let terms = (0..3).map(|_| {
                let m = basis.choose(rng).expect("nonempty").clone();
                (m, Fe(rng.gen_range(1..f.order())))
            });
            AlgebraElement::from_terms(&self.ctx, terms.collect::<Vec<_>>())
        };
        for k in 0..50 {
            let (u, v) = if k % 2 == 0 {
                let a = basis.choose(&mut rng).expect("nonempty").clone();
                let b = basis.choose(&mut rng).expect("nonempty").clone();
                (AlgebraElement::monomial(&self.ctx, a), AlgebraElement::monomial(&self.ctx, b))
            } else {
                (random_element(&mut rng), random_element(&mut rng))
            };
            out.check(alg.multiplicative_on(&u, &v), || {
                Failure::new(format!("bialgebra on ({u:?}, {v:?})"), "Δ(uv) != Δ(u)Δ(v)")
            });
        }
        if self.cfg.negated_antipode {
            out.notes.push("antipode uses S(g_i) = -g_i^{-1}".into());
        }
        out
    }

    fn suite_structure(&self) -> Outcome {
        let alg = HopfAlgebra::new(&self.ctx);
        let n = self.ctx.n();
        let ell = self.ctx.ell();
        let q = self.ctx.q();
        let mut out = Outcome::default();
        let ys: Vec<AlgebraElement> = (1..=n).map(|i| alg.y_element(i).expect("in range")).collect();
        for i in 0..n {
            out.check(alg.power(&ys[i], ell).is_zero(), || {
                Failure::new(format!("Y{}^ell", i + 1), "Y_i^ell != 0")
            });
            for j in i + 1..n {
                let lhs = alg.multiply(&ys[j], &ys[i]).expect("same context");
                let rhs = alg.multiply(&ys[i], &ys[j]).expect("same context").scale(q);
                out.check(lhs == rhs, || {
                    Failure::new(format!("Y{}Y{}", j + 1, i + 1), "Y_j Y_i != q Y_i Y_j")
                });
            }
        }
        let mut rng = self.rng(0x57);
        for _ in 0..self.cfg.structure_points {
            let lambda = self.random_point(&mut rng);
            let tau = alg.tau(lambda.coords()).expect("nonzero point");
            out.check(alg.power(&tau, ell).is_zero(), || {
                Failure::new("tau^ell", "τ_λ(t)^ell != 0").point(&lambda)
            });
        }
        // The same relations as matrices on the regular module.
        let reg = restrict_to_rq(&regular_rep(&self.ctx));
        out.check(reg.validate().is_ok(), || Failure::new("regular R_q-module", "Y relations fail"));
        out
    }

    fn suite_trivial(&self) -> Outcome {
        let mut out = Outcome::default();
        let k = trivial(&self.ctx);
        let degrees = &self.cfg.degrees;
        let v = rank_variety(&k, degrees).expect("valid degrees");
        let full = VarietySet::full(&self.ctx, degrees).expect("valid degrees");
        out.check(v == full, || variety_failure("V(k)".into(), "V(k) != P^{n-1}/G", &v, &full));
        let scanned = rank_variety_all_points(&k, degrees).expect("valid degrees");
        out.check(scanned == full, || variety_failure("V(k) all points".into(), "full scan differs", &scanned, &full));
        for &e in degrees {
            let points = enumerate_points(&self.ctx, e).expect("valid degree");
            let count = brute_force_orbit_count(&self.ctx, &points);
            let reps = full.at(e).map_or(0, |s| s.len());
            out.check(count == reps, || {
                Failure::new(format!("orbit count e={e}"), format!("{count} orbits by search, {reps} canonical"))
            });
            out.notes.push(format!("e={e}: {} points, {} orbits", points.len(), reps));
        }
        out
    }

    fn suite_conjugate(&self) -> Outcome {
        let ctx = &self.ctx;
        let results = self
            .battery()
            .par_iter()
            .map(|item| {
                let mut l = Local::default();
                let m = &item.module;
                for i in 0..ctx.n() {
                    let s = simple(ctx, &Char::generator(ctx.n(), i));
                    let conj = tensor(&tensor(&s, m).expect("ctx"), &dual(&s)).expect("ctx");
                    let phi = conjugation_witness(m, i);
                    let ok = phi.is_invertible() && is_intertwiner(&phi, &conj, m);
                    l.check(ok, || {
                        Failure::new(format!("conjugate χ_{} on battery[{}]", i + 1, item.index), "witness fails")
                            .item(item)
                    });
                }
                l.done()
            })
            .collect();
        let mut out = Outcome::default();
        out.absorb(results);
        out
    }

    fn suite_simples(&self) -> Outcome {
        let results = self
            .battery()
            .par_iter()
            .map(|item| {
                let mut l = Local::default();
                let m = &item.module;
                let ind = induce_r(&restrict_to_r(m));
                let sum = character_sum(m).expect("ctx");
                let (phi, psi) = induction_witnesses(m);
                let id = Mat::identity(m.ctx().base(), ind.dim());
                let case = |what: &str| format!("{what} on battery[{}]", item.index);
                l.check(phi.mul(&psi) == id, || Failure::new(case("φψ = id"), "fails").item(item));
                l.check(psi.mul(&phi) == id, || Failure::new(case("ψφ = id"), "fails").item(item));
                l.check(is_intertwiner(&phi, &ind, &sum), || Failure::new(case("φ linear"), "fails").item(item));
                l.check(is_intertwiner(&psi, &sum, &ind), || Failure::new(case("ψ linear"), "fails").item(item));
                l.done()
            })
            .collect();
        let mut out = Outcome::default();
        out.absorb(results);
        out
    }

    fn suite_duality(&self) -> Outcome {
        let degrees = &self.cfg.degrees;
        let vs = self.varieties();
        let results = self
            .battery()
            .par_iter()
            .zip(vs.par_iter())
            .map(|(item, v)| {
                let mut l = Local::default();
                let vd = rank_variety(&dual(&item.module), degrees).expect("valid degrees");
                let vi = rank_variety(&dual_inv(&item.module), degrees).expect("valid degrees");
                l.check(*v == vd, || {
                    variety_failure(format!("V(M#) battery[{}]", item.index), "V(M) != V(M#)", v, &vd).item(item)
                });
                l.check(*v == vi, || {
                    variety_failure(format!("V(M# via S^-1) battery[{}]", item.index), "differs", v, &vi).item(item)
                });
                l.done()
            })
            .collect();
        let mut out = Outcome::default();
        out.absorb(results);
        out
    }

    fn suite_tensor(&self) -> Outcome {
        let degrees = &self.cfg.degrees;
        let battery = self.battery();
        let vs = self.varieties();
        let pairs: Vec<(usize, usize)> = self.pairs(0x7e).into_iter().take(self.cfg.pairs).collect();
        let mut out = Outcome::default();
        if pairs.len() < self.cfg.pairs {
            out.check(false, || {
                Failure::new("pair selection", format!("only {} pairs within the tensor cap", pairs.len()))
            });
        }
        let inject = self.cfg.inject_fault;
        let results: Vec<(usize, Vec<Failure>, bool, bool)> = pairs
            .par_iter()
            .enumerate()
            .map(|(k, &(i, j))| {
                let (a, b) = (&battery[i], &battery[j]);
                let mut t = tensor(&a.module, &b.module).expect("ctx");
                if inject && k == 0 {
                    t = corrupt(&t);
                }
                let mut l = Local::default();
                let case = format!("battery[{i}] ⊗ battery[{j}]");
                let bundle = |f: Failure| f.item(a).item(b).module("tensor", &t);
                let valid = t.validate();
                l.check(valid.is_ok(), || bundle(Failure::new(case.clone(), valid.clone().unwrap_err().to_string())));
                let vt = rank_variety(&t, degrees).expect("valid degrees");
                let cap = variety_cap(&vs[i], &vs[j]).expect("same degrees");
                let sub = vt.is_subset(&cap).expect("same degrees");
                let sup = cap.is_subset(&vt).expect("same degrees");
                l.check(vt == cap, || bundle(variety_failure(case.clone(), "V(M⊗N) != V(M) ∩ V(N)", &vt, &cap)));
                let (c, f) = l.done();
                (c, f, sub, sup)
            })
            .collect();
        let (mut sub_ok, mut sup_ok) = (0, 0);
        for (c, f, sub, sup) in results {
            out.cases += c;
            out.failures.extend(f);
            sub_ok += usize::from(sub);
            sup_ok += usize::from(sup);
        }
        out.notes.push(format!("V(M⊗N) ⊆ V(M) ∩ V(N) held for {sub_ok}/{} pairs", pairs.len()));
        out.notes.push(format!("V(M) ∩ V(N) ⊆ V(M⊗N) held for {sup_ok}/{} pairs", pairs.len()));

        // Two Carlson modules with different orbits: the intersection is
        // empty, so the product must be projective.
        let reps = orbit_representatives(&self.ctx, 1).expect("degree 1");
        if reps.len() >= 2 {
            let (la, lb) = (&reps[0], &reps[reps.len() - 1]);
            let a = carlson_module(&self.ctx, la).expect("valid point");
            let b = carlson_module(&self.ctx, lb).expect("valid point");
            let proj = tensor_is_projective(&a, &b).expect("ctx");
            out.check(proj, || {
                Failure::new(format!("L{:?} ⊗ L{:?}", la.codes(), lb.codes()), "disjoint varieties, not projective")
            });
            let same = tensor_is_projective(&a, &a).expect("ctx");
            out.check(!same, || {
                Failure::new(format!("L{:?} ⊗ L{:?}", la.codes(), la.codes()), "shared orbit, but projective")
            });
        }
        out
    }

    fn suite_omega(&self) -> Outcome {
        let degrees = &self.cfg.degrees;
        let mut out = Outcome::default();
        let k = trivial(&self.ctx);
        let om = omega(&k);
        let expect = self.ctx.group_order() - 1;
        out.check(om.dim() == expect, || {
            Failure::new("dim Ω(k)", format!("got {}, expected {expect}", om.dim()))
        });
        let vs = self.varieties();
        let results = self
            .battery()
            .par_iter()
            .zip(vs.par_iter())
            .map(|(item, v)| {
                let mut l = Local::default();
                let m = &item.module;
                let om = omega(m);
                let vo = rank_variety(&om, degrees).expect("valid degrees");
                l.check(*v == vo, || {
                    variety_failure(format!("V(ΩM) battery[{}]", item.index), "V(ΩM) != V(M)", v, &vo).item(item)
                });
                let oi = omega_inv(m);
                let vi = rank_variety(&oi, degrees).expect("valid degrees");
                l.check(*v == vi, || {
                    variety_failure(format!("V(Ω^-1 M) battery[{}]", item.index), "V(Ω^-1 M) != V(M)", v, &vi)
                        .item(item)
                });
                l.check(om.dim() > 0 || is_projective_a(m), || {
                    Failure::new(format!("Ω battery[{}]", item.index), "non-projective module with Ω = 0").item(item)
                });
                l.done()
            })
            .collect();
        out.absorb(results);
        // Ω commutes with direct sums.
        let battery = self.battery();
        for (i, j) in self.pairs(0x0e).into_iter().take(5) {
            let (a, b) = (&battery[i].module, &battery[j].module);
            let lhs = omega(&dsum(a, b).expect("ctx"));
            let rhs = dsum(&omega(a), &omega(b)).expect("ctx");
            match is_isomorphic(&lhs, &rhs, self.cfg.iso_trials) {
                Ok(Isomorphism::IsoWitness(_)) => out.check(true, || unreachable!()),
                Ok(Isomorphism::Undetermined) => {
                    out.cases += 1;
                    out.notes.push(format!("Ω(M ⊕ N) for battery[{i}], battery[{j}]: undetermined"));
                }
                _ => out.check(false, || {
                    Failure::new(format!("Ω(battery[{i}] ⊕ battery[{j}])"), "not isomorphic to Ω ⊕ Ω")
                        .item(&battery[i])
                        .item(&battery[j])
                }),
            }
        }
        out
    }

    fn suite_induction(&self) -> Outcome {
        let degrees = &self.cfg.degrees;
        let vs = self.varieties();
        let results = self
            .battery()
            .par_iter()
            .zip(vs.par_iter())
            .map(|(item, v)| {
                let mut l = Local::default();
                let vr = rank_variety_r(&restrict_to_r(&item.module), degrees).expect("valid degrees");
                l.check(*v == vr, || {
                    variety_failure(format!("V_R(M↓) battery[{}]", item.index), "V_R(M↓_R) != V_A(M)", v, &vr)
                        .item(item)
                });
                l.done()
            })
            .collect();
        let mut out = Outcome::default();
        out.absorb(results);
        out
    }

    fn suite_diagonal(&self) -> Outcome {
        let battery = self.battery();
        let pairs = self.pairs(0xd1);
        let mut out = Outcome::default();
        if pairs.is_empty() {
            out.check(false, || Failure::new("triple selection", "no pairs within the tensor cap"));
            return out;
        }
        let mut rng = self.rng(0xd2);
        let mut triples = Vec::with_capacity(self.cfg.diagonal_triples);
        for k in 0..self.cfg.diagonal_triples {
            let lambda = if k == 0 {
                let mut c = vec![Fe::ZERO; self.ctx.n()];
                c[0] = Fe::ONE;
                PPoint::new(self.ctx.base(), c).expect("nonzero")
            } else {
                self.random_point(&mut rng)
            };
            triples.push((lambda, pairs[k % pairs.len()]));
        }
        let results = triples
            .par_iter()
            .map(|(lambda, (i, j))| {
                let mut l = Local::default();
                let (a, b) = (&battery[*i], &battery[*j]);
                let case = format!("Δ^r on battery[{i}] ⊠ battery[{j}]");
                let ok = diagonal_check(lambda, &a.module, &b.module).expect("valid inputs");
                l.check(ok, || Failure::new(case.clone(), "τ_{Δ^r λ} != Δ(τ_λ)").point(lambda).item(a).item(b));
                let outer = outer_tensor(&a.module, &b.module).expect("ctx");
                let t = tensor(&a.module, &b.module).expect("ctx");
                let lhs = point_is_projective(&outer, &diagonal_point(lambda)).expect("nonzero");
                let rhs = point_is_projective(&t, lambda).expect("nonzero");
                l.check(lhs == rhs, || Failure::new(case, "point verdicts differ").point(lambda).item(a).item(b));
                l.done()
            })
            .collect();
        out.absorb(results);
        out
    }

    fn suite_carlson(&self) -> Outcome {
        let degrees = &self.cfg.degrees;
        let ctx = &self.ctx;
        let mut out = Outcome::default();
        let mut rng = self.rng(0xca);
        let lambdas: Vec<PPoint> = (0..self.cfg.carlson_points).map(|_| self.random_point(&mut rng)).collect();
        let results = lambdas
            .par_iter()
            .map(|lambda| {
                let mut l = Local::default();
                let module = carlson_module(ctx, lambda).expect("valid point");
                let v = rank_variety(&module, degrees).expect("valid degrees");
                let mut sets = BTreeMap::new();
                for &e in degrees {
                    // Prime-field codes are the same in every extension.
                    let field = ctx.extend(e).expect("valid degree");
                    let at_e = PPoint::new(&field, lambda.coords().to_vec()).expect("nonzero");
                    let rep = orbit_canonical(ctx, &at_e).expect("valid point");
                    sets.insert(e, [rep].into_iter().collect());
                }
                let expect = VarietySet::from_sets(sets);
                l.check(v == expect, || {
                    variety_failure(format!("V(L{:?})", lambda.codes()), "V(L(λ)) != {orbit(λ)}", &v, &expect)
                        .point(lambda)
                });
                l.done()
            })
            .collect();
        out.absorb(results);

        // λ ∈ V(M) iff L(λ) ⊗ M is not projective, at every point of degree 1.
        let points = enumerate_points(ctx, 1).expect("degree 1");
        let carlsons: Vec<ModuleRep> =
            points.par_iter().map(|p| carlson_module(ctx, p).expect("valid point")).collect();
        let jobs: Vec<(&BatteryItem, &PPoint, &ModuleRep)> = self
            .battery()
            .iter()
            .flat_map(|item| points.iter().zip(&carlsons).map(move |(p, l)| (item, p, l)))
            .collect();
        let results = jobs
            .par_iter()
            .map(|(item, p, l)| {
                let mut loc = Local::default();
                let in_variety = !point_is_projective(&item.module, p).expect("nonzero");
                let not_proj = !tensor_is_projective(l, &item.module).expect("ctx");
                loc.check(in_variety == not_proj, || {
                    Failure::new(
                        format!("L(λ) ⊗ battery[{}]", item.index),
                        format!("point test says {in_variety}, tensor test says {not_proj}"),
                    )
                    .point(p)
                    .item(item)
                });
                loc.done()
            })
            .collect();
        out.absorb(results);
        out
    }

    fn suite_twist(&self) -> Outcome {
        let degrees = &self.cfg.degrees;
        let group = crate::hopf::exponent_vectors(self.ctx.ell(), self.ctx.n());
        let results = self
            .battery()
            .par_iter()
            .map(|item| {
                let mut l = Local::default();
                let m = restrict_to_rq(&item.module);
                let base = rank_variety_rq(&m, degrees).expect("valid degrees");
                for b in &group {
                    let v = rank_variety_rq(&twist_g(&m, b), degrees).expect("valid degrees");
                    l.check(v == base, || {
                        variety_failure(format!("V_Rq(^g M) g={b:?} battery[{}]", item.index), "twist changes V", &base, &v)
                            .item(item)
                    });
                }
                l.done()
            })
            .collect();
        let mut out = Outcome::default();
        out.absorb(results);
        out
    }

    fn suite_thickwitness(&self) -> Outcome {
        let results = self
            .battery()
            .par_iter()
            .map(|item| {
                let mut l = Local::default();
                let m = &item.module;
                let d = m.dim();
                let ind = induce_r(&restrict_to_r(m));
                let (phi, psi) = induction_witnesses(m);
                // The trivial character is the first block of ⊕_χ M ⊗ S_χ.
                let all: Vec<usize> = (0..ind.dim()).collect();
                let first: Vec<usize> = (0..d).collect();
                let inject = psi.select(&all, &first);
                let project = phi.select(&first, &all);
                let id = Mat::identity(m.ctx().base(), d);
                let case = |w: &str| format!("{w} battery[{}]", item.index);
                l.check(project.mul(&inject) == id, || Failure::new(case("π ι = id"), "fails").item(item));
                l.check(is_intertwiner(&inject, m, &ind), || Failure::new(case("ι linear"), "fails").item(item));
                l.check(is_intertwiner(&project, &ind, m), || Failure::new(case("π linear"), "fails").item(item));
                l.done()
            })
            .collect();
        let mut out = Outcome::default();
        out.absorb(results);
        out
    }

    fn suite_projectivity(&self) -> Outcome {
        let degrees = &self.cfg.degrees;
        let ctx = &self.ctx;
        let mut modules: Vec<(String, ModuleRep, Option<&BatteryItem>)> = self
            .battery()
            .iter()
            .map(|b| (format!("battery[{}]", b.index), b.module.clone(), Some(b)))
            .collect();
        modules.push(("regular".into(), regular_rep(ctx), None));
        for chi in Char::all(ctx).into_iter().take(3) {
            let p = projective_indecomposable(ctx, &chi);
            modules.push((format!("P{:?}", chi.0), p.clone(), None));
            if let Some(first) = self.battery().first() {
                if first.module.dim() * p.dim() <= self.cfg.max_tensor_dim {
                    let t = tensor(&first.module, &p).expect("ctx");
                    modules.push((format!("battery[0] ⊗ P{:?}", chi.0), t, None));
                }
            }
        }
        let results: Vec<(usize, Vec<Failure>, bool)> = modules
            .par_iter()
            .map(|(name, m, item)| {
                let mut l = Local::default();
                let proj = is_projective_a(m);
                let v = rank_variety(m, degrees).expect("valid degrees");
                let attach = |f: Failure| match item {
                    Some(it) => f.item(it),
                    None => f.module(name, m),
                };
                l.check(proj == v.is_empty(), || {
                    attach(Failure::new(
                        name.clone(),
                        format!("is_projective = {proj} but variety has {} orbits", v.len()),
                    ))
                });
                l.check(is_projective_head(m) == is_projective_socle(m), || {
                    attach(Failure::new(name.clone(), "head and socle criteria disagree"))
                });
                let (c, f) = l.done();
                (c, f, proj)
            })
            .collect();
        let mut out = Outcome::default();
        let projective = results.iter().filter(|r| r.2).count();
        for (c, f, _) in results {
            out.cases += c;
            out.failures.extend(f);
        }
        out.notes.push(format!("{projective} of {} modules projective", modules.len()));
        out
    }
}

/// Sets one diagonal entry of `g_1` to zero, which breaks `g_1^ell = 1`.
fn corrupt(m: &ModuleRep) -> ModuleRep {
    let mut g: Vec<Mat> = m.gs().to_vec();
    g[0][(0, 0)] = Fe::ZERO;
    ModuleRep::from_parts(m.ctx(), m.xs().to_vec(), g).expect("shapes unchanged")
}

/// Orbit count by union-find over all points under the generator actions,
/// independent of the canonical-representative code.
fn brute_force_orbit_count(ctx: &FieldCtx, points: &[PPoint]) -> usize {
    let index: BTreeMap<&PPoint, usize> = points.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut parent: Vec<usize> = (0..points.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let Some(first) = points.first() else { return 0 };
    let field = ctx.extend(first.degree()).expect("valid degree");
    for (i, p) in points.iter().enumerate() {
        for g in 0..ctx.n() {
            let mut coords = p.coords().to_vec();
            coords[g] = field.mul(coords[g], field.embed_prime(ctx.q()));
            let image = PPoint::new(&field, coords).expect("nonzero");
            let j = index[&image];
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    (0..points.len()).filter(|&i| find(&mut parent, i) == i).count()
}

/// Runs the named suites (all of them when `names` is empty) on a pool of
/// `cfg.workers` threads.
pub fn run_suites(cfg: &SuiteConfig, names: &[&str]) -> Result<RunReport> {
    for name in names {
        if !SUITES.contains(name) {
            return Err(Error::UnknownSuite(name.to_string()));
        }
    }
    let harness = Harness::new(cfg.clone())?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| Error::Format(e.to_string()))?;
    let selected: Vec<&str> = if names.is_empty() { SUITES.to_vec() } else { names.to_vec() };
    pool.install(|| {
        let reports: Result<Vec<SuiteReport>> = selected.iter().map(|s| harness.run(s)).collect();
        let reports = reports?;
        let passed = reports.iter().all(|r| r.passed);
        Ok(RunReport { passed, reports })
    })
}

/// Every suite on one configuration.
pub fn run_all(cfg: &SuiteConfig) -> Result<RunReport> {
    run_suites(cfg, &[])
}

/// `rank_variety` on a pool of the given size, for determinism checks.
pub fn rank_variety_with_workers(m: &ModuleRep, degrees: &[u32], workers: usize) -> Result<VarietySet> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Format(e.to_string()))?;
    pool.install(|| rank_variety(m, degrees))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> SuiteConfig {
        let mut c = SuiteConfig::new(5, 2, 2);
        c.battery = 6;
        c.pairs = 4;
        c.structure_points = 10;
        c.carlson_points = 3;
        c.diagonal_triples = 5;
        c.workers = 2;
        c
    }

    #[test]
    fn unknown_suite_is_an_error() {
        assert_eq!(run_suites(&small(), &["nope"]).unwrap_err(), Error::UnknownSuite("nope".into()));
    }

    #[test]
    fn invalid_config_is_rejected() {
        let mut c = small();
        c.battery = 0;
        assert!(run_all(&c).is_err());
        let mut c = small();
        c.p = 9;
        assert_eq!(run_all(&c).unwrap_err(), Error::NotPrime(9));
    }

    #[test]
    fn small_run_passes_and_is_deterministic() {
        let a = run_all(&small()).unwrap();
        assert!(a.passed, "{}", a.to_text());
        let b = run_all(&small()).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        assert_eq!(a.to_text(), b.to_text());
    }

    #[test]
    fn injected_fault_is_caught() {
        let mut c = small();
        c.inject_fault = true;
        let r = run_suites(&c, &["tensor"]).unwrap();
        assert!(!r.passed);
        let f = &r.reports[0].failures[0];
        assert!(f.modules.iter().any(|m| m.label.as_deref() == Some("tensor")));
    }

    #[test]
    fn negated_antipode_fails() {
        let mut c = small();
        c.negated_antipode = true;
        let r = run_suites(&c, &["hopf"]).unwrap();
        assert!(!r.passed);
        assert!(r.reports[0].failures.iter().any(|f| f.case.starts_with("antipode")));
    }

    #[test]
    fn orbit_count_oracle() {
        let ctx = FieldCtx::new(7, 3, 2).unwrap();
        let pts = enumerate_points(&ctx, 1).unwrap();
        assert_eq!(brute_force_orbit_count(&ctx, &pts), 4);
    }
}
