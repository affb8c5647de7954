//! Borel decompositions of catalogued modules with self-contained evidence.

use serde::Serialize;
use serde_json::{json, Value};

use super::commutant::{default_margin, is_indecomposable_window, IndecomposabilityEvidence, Verdict};
use super::direct::{is_direct, DirectnessEvidence};
use super::flag::FlagReport;
use super::split::{complement, head_complement};
use crate::error::{Error, Result};
use crate::module::{
    saturate, simple, verma, FormalCharacter, Levi, MAlpha, Submodule, TruncatedModule,
};
use crate::rootdata::{root_datum, weight_json, CartanType, Weight};
use crate::tensorblocks::{block_component, tensor};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SummandKind {
    Verma,
    Simple,
    DualVerma,
    Projective,
    GeneralizedVerma,
    QuotientOfVerma,
    Extension,
    UnknownIndecomposable,
}

/// A pass/fail record of one evidence check.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), passed, detail: detail.into() }
    }
}

#[derive(Clone, Debug)]
pub struct SummandCertificate {
    pub kind: SummandKind,
    pub label: String,
    pub params: Value,
    /// The summand inside the target module.
    pub sub: Submodule,
    pub character: FormalCharacter,
    pub indecomposability: Option<IndecomposabilityEvidence>,
    pub flag: Option<FlagReport>,
}

#[derive(Clone, Debug)]
pub struct DecompositionCertificate {
    pub target: Value,
    pub acting: String,
    pub depth: u32,
    pub summands: Vec<SummandCertificate>,
    pub directness: Option<DirectnessEvidence>,
    pub checks: Vec<Check>,
}

impl DecompositionCertificate {
    pub fn new(target: Value, acting: String, depth: u32) -> Self {
        DecompositionCertificate { target, acting, depth, summands: Vec::new(), directness: None, checks: Vec::new() }
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check::new(name, passed, detail));
    }

    pub fn valid(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    pub fn kinds(&self) -> Vec<(SummandKind, String)> {
        self.summands.iter().map(|s| (s.kind, s.label.clone())).collect()
    }

    /// Record directness and character completeness of the summands in `m`.
    pub fn record_directness(&mut self, m: &TruncatedModule) -> Result<()> {
        let subs: Vec<Submodule> = self.summands.iter().map(|s| s.sub.clone()).collect();
        let (direct, ev) = is_direct(m, &subs)?;
        self.check("direct", direct, "maximal-vector ranks are additive at every interior weight");
        self.check("complete", ev.char_equal && ev.total_direct, "summand characters add up to the module on the interior");
        self.directness = Some(ev);
        Ok(())
    }

    /// Re-run closure, directness and completeness from the stored subspaces.
    /// A g-module is first restricted to the Borel when the certificate is over the Borel.
    pub fn reverify(&self, m: &TruncatedModule) -> Result<bool> {
        let restricted;
        let m = if m.acting_tag() != self.acting && m.restrict(Levi::borel())?.acting_tag() == self.acting {
            restricted = m.restrict(Levi::borel())?;
            &restricted
        } else {
            m
        };
        let subs: Vec<Submodule> = self.summands.iter().map(|s| s.sub.clone()).collect();
        for s in &subs {
            if s.check_closed(m).is_err() {
                return Ok(false);
            }
        }
        for s in &self.summands {
            if s.sub.character(m) != s.character {
                return Ok(false);
            }
        }
        let (_, ev) = is_direct(m, &subs)?;
        Ok(ev.is_decomposition())
    }

    pub fn to_json(&self, evidence: bool) -> Value {
        let summands: Vec<Value> = self
            .summands
            .iter()
            .map(|s| {
                let mut v = json!({
                    "kind": s.kind,
                    "label": s.label,
                    "params": s.params,
                    "dims": s.character,
                });
                let o = v.as_object_mut().expect("object");
                if let Some(ev) = &s.indecomposability {
                    o.insert("indecomposability".into(), json!(ev));
                }
                if let Some(f) = &s.flag {
                    o.insert("flag".into(), json!(f));
                }
                if evidence {
                    let incl: Vec<Value> = s
                        .sub
                        .spaces()
                        .iter()
                        .map(|(off, b)| {
                            let cols: Vec<Vec<String>> =
                                b.vectors().iter().map(|c| c.iter().map(|x| x.to_string()).collect()).collect();
                            json!({"offset": off, "columns": cols})
                        })
                        .collect();
                    o.insert("inclusion".into(), json!(incl));
                }
                v
            })
            .collect();
        let mut out = json!({
            "target": self.target,
            "acting": self.acting,
            "depth": self.depth,
            "valid": self.valid(),
            "summands": summands,
        });
        let o = out.as_object_mut().expect("object");
        if let Some(d) = &self.directness {
            let mut dv = json!({
                "maximal_direct": d.maximal_direct,
                "total_direct": d.total_direct,
                "char_bound": d.char_bound,
                "char_equal": d.char_equal,
            });
            if evidence {
                dv.as_object_mut().expect("object").insert("ranks".into(), json!(d.table));
            }
            o.insert("directness".into(), dv);
        }
        o.insert("checks".into(), json!(self.checks));
        out
    }
}

/// Module kinds with a known Borel decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Catalogued {
    /// `M(w . lambda)` for dominant integral `lambda`; `word` is a reduced word, applied right to left.
    Verma { ty: CartanType, lambda: Weight, word: Vec<usize> },
    /// The simple module `L(lambda)` (rank one).
    Simple { lambda: Weight },
    /// The dual Verma module `M(lambda)^dual` (rank one).
    DualVerma { lambda: Weight },
    /// The projective cover of `L(-lambda - 2)` for dominant `lambda` (rank one).
    Projective { lambda: Weight },
}

/// Short name of a Weyl group element: `s_a s_b` (rank two) or `s` (rank one).
pub fn weyl_label(ty: CartanType, word: &[usize]) -> String {
    if word.is_empty() {
        return "e".into();
    }
    let names: Vec<&str> = word
        .iter()
        .map(|&i| match (ty, i) {
            (CartanType::A1, _) => "s",
            (_, 0) => "s_a",
            _ => "s_b",
        })
        .collect();
    names.join(" ")
}

impl Catalogued {
    pub fn ty(&self) -> CartanType {
        match self {
            Catalogued::Verma { ty, .. } => *ty,
            _ => CartanType::A1,
        }
    }

    fn dominant(&self) -> &Weight {
        match self {
            Catalogued::Verma { lambda, .. }
            | Catalogued::Simple { lambda }
            | Catalogued::DualVerma { lambda }
            | Catalogued::Projective { lambda } => lambda,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let ty = self.ty();
        let d = root_datum(ty);
        d.check_rank(self.dominant())?;
        if !d.is_dominant_integral(self.dominant()) {
            return Err(Error::Precondition(format!("{} is not dominant integral", self.dominant())));
        }
        if let Catalogued::Verma { word, .. } = self {
            if d.weyl_element(word).is_none_or(|w| w.length() != word.len()) {
                return Err(Error::Spec(format!("{word:?} is not a reduced word")));
            }
        }
        Ok(())
    }

    /// Highest weight of the module.
    pub fn top(&self) -> Weight {
        let d = root_datum(self.ty());
        match self {
            Catalogued::Verma { lambda, word, .. } => d.dot_action(&d.weyl_element(word).expect("valid word"), lambda),
            Catalogued::Simple { lambda } | Catalogued::DualVerma { lambda } | Catalogued::Projective { lambda } => {
                lambda.clone()
            }
        }
    }

    pub fn name(&self) -> String {
        let l = self.dominant();
        match self {
            Catalogued::Verma { ty, word, .. } if word.is_empty() => format!("M({l}) over {}", ty.name()),
            Catalogued::Verma { ty, word, .. } => format!("M({}.{l}) over {}", weyl_label(*ty, word), ty.name()),
            Catalogued::Simple { .. } => format!("L({l}) over A1"),
            Catalogued::DualVerma { .. } => format!("M({l})^dual over A1"),
            Catalogued::Projective { .. } => format!("P({}) over A1", self.antidominant()),
        }
    }

    fn antidominant(&self) -> Weight {
        let d = root_datum(self.ty());
        d.dot_action(d.longest(), self.dominant())
    }

    pub fn descriptor(&self) -> Value {
        let (kind, extra) = match self {
            Catalogued::Verma { ty, word, .. } => ("verma", json!({"w": weyl_label(*ty, word)})),
            Catalogued::Simple { .. } => ("simple", json!({})),
            Catalogued::DualVerma { .. } => ("dual-verma", json!({})),
            Catalogued::Projective { .. } => ("projective", json!({"socle_weight": weight_json(&self.antidominant())})),
        };
        let mut v = json!({
            "algebra": self.ty().name(),
            "kind": kind,
            "lambda": weight_json(self.dominant()),
            "highest_weight": weight_json(&self.top()),
            "name": self.name(),
        });
        if let (Some(o), Some(e)) = (v.as_object_mut(), extra.as_object()) {
            o.extend(e.clone());
        }
        v
    }

    /// Realize the module as a g-module on a window of the given depth.
    pub fn build(&self, depth: u32) -> Result<TruncatedModule> {
        self.validate()?;
        let ty = self.ty();
        match self {
            Catalogued::Verma { .. } => verma(ty, &self.top(), depth),
            Catalogued::Simple { lambda } => simple(ty, lambda, depth),
            Catalogued::DualVerma { lambda } => verma(ty, lambda, depth)?.dual(),
            Catalogued::Projective { lambda } => projective_a1(lambda, depth),
        }
    }
}

/// `P(-lambda - 2)` as the block of `lambda` in `M(-1) (x) L(lambda + 1)`.
pub fn projective_a1(lambda: &Weight, depth: u32) -> Result<TruncatedModule> {
    let ty = CartanType::A1;
    let shift = Weight::from_ints(&[1]);
    let a = verma(ty, &Weight::from_ints(&[-1]), depth)?;
    let b = simple(ty, &(lambda + &shift), depth)?;
    let t = tensor(&a, &b, depth)?;
    let blk = block_component(&t, lambda)?;
    let mut m = blk.as_module(&t);
    m.set_provenance("projective", format!("P({})", -&(lambda + &Weight::from_ints(&[2]))));
    Ok(m)
}

fn one_vector(m: &TruncatedModule, w: &Weight) -> Result<(crate::module::Offset, Vec<crate::rat::Q>)> {
    let o = m.offset_or_err(w)?;
    let mv = m.maximal_vectors_at(&o);
    if mv.dim() != 1 {
        return Err(Error::Verification(format!("expected one maximal vector at {w}, found {}", mv.dim())));
    }
    Ok((o, mv.vectors()[0].clone()))
}

/// The g-submodule generated by the maximal vector of weight `w`.
fn verma_sub(m: &TruncatedModule, w: &Weight) -> Result<Submodule> {
    let (o, v) = one_vector(m, w)?;
    Ok(saturate(m, Submodule::zero(), vec![(o, v)]))
}

struct Planned {
    kind: SummandKind,
    label: String,
    params: Value,
    sub: Submodule,
    expected: FormalCharacter,
}

/// Decompose the restriction to the Borel subalgebra of a catalogued module.
pub fn decompose_b(m: &TruncatedModule, ctx: &Catalogued) -> Result<DecompositionCertificate> {
    ctx.validate()?;
    let ty = ctx.ty();
    if m.ty() != ty || m.top() != &ctx.top() || !m.is_g_module() {
        return Err(Error::Precondition(format!("module does not realize {}", ctx.name())));
    }
    let d = root_datum(ty);
    let depth = m.depth();
    let top = m.top().clone();
    let r = m.restrict(Levi::borel())?;
    let vchar = |w: &Weight| FormalCharacter::verma(ty, w, &top, depth);
    let schar = |w: &Weight| -> Result<FormalCharacter> {
        let o = m.offset_or_err(w)?;
        let l = simple(ty, w, depth - crate::module::ht(&o))?;
        let mut c = FormalCharacter::new(ty, top.clone(), depth);
        for (wt, k) in l.character().entries() {
            c.set(wt.clone(), *k);
        }
        Ok(c)
    };
    let lam = ctx.dominant().clone();
    let dot = |word: &[usize]| d.dot_action(&d.weyl_element(word).expect("valid word"), &lam);
    let wl = |word: &[usize]| weyl_label(ty, word);
    let at_lam = |word: &[usize]| if word.is_empty() { lam.to_string() } else { format!("{}.{lam}", wl(word)) };
    let hw = |w: &Weight| json!({"highest_weight": weight_json(w)});
    let mut plan: Vec<Planned> = Vec::new();
    let mut extra: Vec<Check> = Vec::new();
    let w0: Vec<usize> = d.longest().word.clone();
    match ctx {
        Catalogued::Verma { word, .. } => {
            let low = dot(&w0);
            let l_sub = |sub: Submodule, at: &[usize]| -> Result<Planned> {
                let w = dot(at);
                Ok(Planned {
                    kind: SummandKind::Simple,
                    label: format!("L({})", at_lam(at)),
                    params: hw(&w),
                    sub,
                    expected: schar(&w)?,
                })
            };
            let low_verma = || -> Result<Planned> {
                Ok(Planned {
                    kind: SummandKind::Verma,
                    label: format!("M({}.{lam})", wl(&w0)),
                    params: hw(&low),
                    sub: verma_sub(m, &low)?,
                    expected: vchar(&low),
                })
            };
            let lr = &lam + &d.rho;
            let pair = |i: usize| lr.pairing(i).to_i64().expect("integral") as u32;
            let quotient_of = |which: MAlpha, shift: u32| -> Result<Planned> {
                let (a, ab, bound, name) = match which {
                    MAlpha::Alpha => (vec![0], vec![0, 1], pair(1), "M_a"),
                    MAlpha::Beta => (vec![1], vec![1, 0], pair(0), "M_b"),
                };
                let sub = crate::module::alpha_family(m, which, bound, shift);
                Ok(Planned {
                    kind: SummandKind::QuotientOfVerma,
                    label: format!("{name} = M({}.{lam})/M({}.{lam})", wl(&a), wl(&ab)),
                    params: json!({"verma": weight_json(&dot(&a)), "sub": weight_json(&dot(&ab))}),
                    sub,
                    expected: vchar(&dot(&a)).checked_sub(&vchar(&dot(&ab))).expect("Verma inclusion"),
                })
            };
            match (ty, word.as_slice()) {
                (_, []) => {
                    plan.push(l_sub(head_complement(m, Levi::borel())?, &[])?);
                    if ty == CartanType::A2 {
                        plan.push(quotient_of(MAlpha::Alpha, pair(0))?);
                        plan.push(quotient_of(MAlpha::Beta, pair(1))?);
                    }
                    plan.push(low_verma()?);
                }
                (CartanType::A2, [i]) => {
                    let (which, longer) = if *i == 0 { (MAlpha::Alpha, vec![0, 1]) } else { (MAlpha::Beta, vec![1, 0]) };
                    plan.push(quotient_of(which, 0)?);
                    let t = verma_sub(m, &dot(&longer))?;
                    let s = verma_sub(m, &low)?;
                    let tm = t.as_module(&r);
                    let c = complement(&tm, &t.restrict_to(&s))?
                        .ok_or_else(|| Error::Verification("no Borel complement of the antidominant Verma".into()))?;
                    plan.push(l_sub(t.lift(&c), &longer)?);
                    plan.push(low_verma()?);
                }
                (CartanType::A2, [_, _]) => {
                    let s = verma_sub(m, &low)?;
                    let c = complement(&r, &s)?
                        .ok_or_else(|| Error::Verification("no Borel complement of the antidominant Verma".into()))?;
                    plan.push(l_sub(c, word)?);
                    plan.push(low_verma()?);
                }
                _ => plan.push(Planned {
                    kind: SummandKind::Verma,
                    label: format!("M({})", at_lam(word)),
                    params: hw(&top),
                    sub: Submodule::full(m),
                    expected: vchar(&top),
                }),
            }
        }
        Catalogued::Simple { .. } => plan.push(Planned {
            kind: SummandKind::Simple,
            label: format!("L({lam})"),
            params: hw(&lam),
            sub: Submodule::full(m),
            expected: schar(&lam)?,
        }),
        Catalogued::DualVerma { .. } => plan.push(Planned {
            kind: SummandKind::DualVerma,
            label: format!("M({lam})^dual"),
            params: hw(&lam),
            sub: Submodule::full(m),
            expected: vchar(&lam),
        }),
        Catalogued::Projective { .. } => {
            let low = dot(&w0);
            let lo = m.offset_or_err(&low)?;
            let mv = m.maximal_vectors_at(&lo);
            if mv.dim() != 1 {
                return Err(Error::Verification(format!("expected one maximal vector at {low}, found {}", mv.dim())));
            }
            let soc = saturate(m, Submodule::zero(), vec![(lo, mv.vectors()[0].clone())]);
            let c = complement(&r, &soc)?
                .ok_or_else(|| Error::Verification("the socle Verma module has no Borel complement".into()))?;
            extra.push(Check::new(
                format!("M({lam})^dual: raising is nonzero at every weight"),
                raising_chain(&c.as_module(&r)),
                "a chain of one-dimensional weight spaces with nonzero raising maps",
            ));
            let x_low = r.action(crate::module::Gen::X(0), &lo).is_some_and(|a| !a.is_zero());
            extra.push(Check::new(
                format!("no summand isomorphic to L({lam})"),
                x_low,
                format!("raising from weight {low} is nonzero, so weight {low} cannot split off the weights above it"),
            ));
            plan.push(Planned {
                kind: SummandKind::DualVerma,
                label: format!("M({lam})^dual"),
                params: hw(&lam),
                sub: c,
                expected: vchar(&lam),
            });
            plan.push(Planned {
                kind: SummandKind::Verma,
                label: format!("M({low})"),
                params: hw(&low),
                sub: soc,
                expected: vchar(&low),
            });
        }
    }
    let mut cert = DecompositionCertificate::new(ctx.descriptor(), r.acting_tag(), depth);
    for p in plan {
        let ok = p.sub.check_closed(&r).is_ok();
        cert.check(format!("{}: closed under b", p.label), ok, "");
        let ch = p.sub.character(&r);
        let want = p.expected.truncate(depth.saturating_sub(1));
        let got = ch.truncate(depth.saturating_sub(1));
        cert.check(format!("{}: character", p.label), got.same_dims(&want), "");
        let sm = p.sub.as_module(&r);
        let ev = default_margin(&sm).and_then(|mg| is_indecomposable_window(&sm, mg))?;
        cert.check(
            format!("{}: indecomposable within window", p.label),
            ev.verdict == Verdict::IndecomposableWithinWindow,
            format!("commutant dimension {}, margin {}", ev.commutant_dim, ev.margin),
        );
        cert.summands.push(SummandCertificate {
            kind: p.kind,
            label: p.label,
            params: p.params,
            sub: p.sub,
            character: ch,
            indecomposability: Some(ev),
            flag: None,
        });
    }
    cert.checks.extend(extra);
    cert.record_directness(&r)?;
    Ok(cert)
}

/// Every weight space is at most one-dimensional and raising is nonzero below the top.
fn raising_chain(m: &TruncatedModule) -> bool {
    m.support().iter().all(|o| {
        m.dim(o) == 1
            && (crate::module::ht(o) == 0
                || m.action(crate::module::Gen::X(0), o).is_some_and(|a| !a.is_zero()))
    })
}
