//! Verification of the principal-block tensor product tables.

use std::fmt;
use std::str::FromStr;

use serde_json::json;

use super::certificate::{projective_a1, weyl_label, DecompositionCertificate, SummandCertificate, SummandKind};
use super::commutant::{default_margin, is_indecomposable_window, split_by_idempotent, IndecomposabilityEvidence, Verdict};
use super::direct::is_direct;
use super::flag::verma_flag;
use crate::error::{Error, Result};
use crate::module::{quotient, saturate, tensor_pure, verma, FormalCharacter, Submodule, TruncatedModule};
use crate::rootdata::{root_datum, weight_json, CartanType, Weight};
use crate::tensorblocks::{block_component, block_decompose, tensor};

/// The sl2 tensor products in the table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sl2Table {
    /// `M(0) (x) M(0)`
    VermaVerma,
    /// `M(0) (x) M(0)^dual`
    VermaDual,
    /// `M(0) (x) P(-2)`
    VermaProjective,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableCase {
    Sl2(Sl2Table),
    /// One of the seven principal-block products of sl3 Verma modules.
    Sl3(u8),
    /// The principal-block products of sl3 Verma modules claimed to vanish.
    Sl3Vanishing,
}

impl TableCase {
    pub fn all() -> Vec<TableCase> {
        let mut v = vec![
            TableCase::Sl2(Sl2Table::VermaVerma),
            TableCase::Sl2(Sl2Table::VermaDual),
            TableCase::Sl2(Sl2Table::VermaProjective),
        ];
        v.extend((1..=7).map(TableCase::Sl3));
        v.push(TableCase::Sl3Vanishing);
        v
    }

    pub fn id(&self) -> String {
        match self {
            TableCase::Sl2(Sl2Table::VermaVerma) => "sl2-m0-m0".into(),
            TableCase::Sl2(Sl2Table::VermaDual) => "sl2-m0-dual".into(),
            TableCase::Sl2(Sl2Table::VermaProjective) => "sl2-m0-p".into(),
            TableCase::Sl3(k) => format!("sl3-case-{k}"),
            TableCase::Sl3Vanishing => "sl3-vanishing".into(),
        }
    }
}

impl fmt::Display for TableCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id())
    }
}

impl FromStr for TableCase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        let t = t.strip_prefix("sl2-").unwrap_or(&t);
        match t {
            "m0-m0" => return Ok(TableCase::Sl2(Sl2Table::VermaVerma)),
            "m0-dual" => return Ok(TableCase::Sl2(Sl2Table::VermaDual)),
            "m0-p" => return Ok(TableCase::Sl2(Sl2Table::VermaProjective)),
            "sl3-vanishing" | "vanishing" => return Ok(TableCase::Sl3Vanishing),
            _ => {}
        }
        let k = t.strip_prefix("sl3-case-").or_else(|| t.strip_prefix("case-")).unwrap_or(t);
        match k.parse::<u8>() {
            Ok(k @ 1..=7) => Ok(TableCase::Sl3(k)),
            _ => Err(Error::Spec(format!("unknown table case `{s}`"))),
        }
    }
}

/// A claimed indecomposable summand: Verma highest weights of its submodule
/// part and of its quotient (a Verma module when `sub` is empty).
#[derive(Clone, Debug)]
struct Claim {
    kind: SummandKind,
    label: String,
    quotient: Weight,
    sub: Vec<Weight>,
}

impl Claim {
    fn flag(&self) -> Vec<Weight> {
        let mut v = self.sub.clone();
        v.push(self.quotient.clone());
        v.sort();
        v
    }
}

/// `w . 0` in sl3 for a reduced word, applied right to left.
fn dot0(word: &[usize]) -> Weight {
    let d = root_datum(CartanType::A2);
    d.dot_action(&d.weyl_element(word).expect("reduced word"), &Weight::zero(2))
}

fn verma_name(word: &[usize]) -> String {
    format!("M({}.0)", weyl_label(CartanType::A2, word))
}

const E: &[usize] = &[];
const SA: &[usize] = &[0];
const SB: &[usize] = &[1];
const SASB: &[usize] = &[0, 1];
const SBSA: &[usize] = &[1, 0];
const W0: &[usize] = &[0, 1, 0];

fn verma_claim(word: &[usize]) -> Claim {
    Claim { kind: SummandKind::Verma, label: verma_name(word), quotient: dot0(word), sub: vec![] }
}

fn ext_claim(top: &[usize], subs: &[&[usize]]) -> Claim {
    let names: Vec<String> = subs.iter().map(|w| verma_name(w)).collect();
    Claim {
        kind: SummandKind::Extension,
        label: format!("{{{}, {}}}", verma_name(top), names.join(" + ")),
        quotient: dot0(top),
        sub: subs.iter().map(|w| dot0(w)).collect(),
    }
}

/// Factors and claimed summands of an sl3 case.
fn sl3_case(k: u8) -> (&'static [usize], &'static [usize], Vec<Claim>) {
    match k {
        1 => (
            E,
            E,
            vec![
                verma_claim(E),
                ext_claim(W0, &[SASB, SBSA, SA]),
                ext_claim(W0, &[SASB, SBSA, SB]),
                verma_claim(W0),
            ],
        ),
        2 => (E, SA, vec![verma_claim(SA), ext_claim(W0, &[SASB, SBSA]), verma_claim(SASB), verma_claim(W0)]),
        3 => (E, SASB, vec![verma_claim(SASB), verma_claim(W0)]),
        4 => (E, W0, vec![verma_claim(W0)]),
        5 => (SA, SA, vec![verma_claim(SASB), verma_claim(W0)]),
        6 => (SA, SB, vec![ext_claim(W0, &[SASB, SBSA]), verma_claim(W0)]),
        _ => (SA, SBSA, vec![verma_claim(W0)]),
    }
}

/// Unordered pairs of principal-block Verma modules not covered by the seven
/// cases or their mirror images.
pub fn sl3_vanishing_pairs() -> Vec<(Vec<usize>, Vec<usize>)> {
    let pairs: [(&[usize], &[usize]); 10] = [
        (SA, SASB),
        (SA, W0),
        (SB, SBSA),
        (SB, W0),
        (SASB, SASB),
        (SASB, SBSA),
        (SASB, W0),
        (SBSA, SBSA),
        (SBSA, W0),
        (W0, W0),
    ];
    pairs.iter().map(|(a, b)| (a.to_vec(), b.to_vec())).collect()
}

/// One indecomposable piece of a module with its evidence.
#[derive(Clone, Debug)]
pub struct Piece {
    pub sub: Submodule,
    pub evidence: IndecomposabilityEvidence,
}

/// Split a g-module into pieces that are indecomposable within the window by
/// repeated idempotent splitting; every split is checked to be a direct-sum
/// decomposition.
pub fn split_into_indecomposables(m: &TruncatedModule) -> Result<Vec<Piece>> {
    let margin = default_margin(m)?;
    let ev = is_indecomposable_window(m, margin)?;
    match ev.verdict {
        Verdict::Zero => Ok(vec![]),
        Verdict::IndecomposableWithinWindow | Verdict::Undecided => {
            Ok(vec![Piece { sub: Submodule::full(m), evidence: ev }])
        }
        Verdict::Decomposable => {
            let (c, e) = (ev.commutant.as_ref().expect("commutant"), ev.idempotent.as_ref().expect("idempotent"));
            let (p, q) = split_by_idempotent(m, c, e);
            let (_, dev) = is_direct(m, &[p.clone(), q.clone()])?;
            if !dev.is_decomposition() || p.is_zero() || q.is_zero() {
                return Err(Error::Verification("idempotent images do not split the module".into()));
            }
            let mut out = Vec::new();
            for s in [p, q] {
                for piece in split_into_indecomposables(&s.as_module(m))? {
                    out.push(Piece { sub: s.lift(&piece.sub), evidence: piece.evidence });
                }
            }
            Ok(out)
        }
    }
}

fn flag_steps(m: &TruncatedModule) -> Option<Vec<Weight>> {
    let mut v = verma_flag(m)?.steps;
    v.sort();
    Some(v)
}

fn weights_text(ws: &[Weight]) -> String {
    let v: Vec<String> = ws.iter().map(|w| w.to_string()).collect();
    format!("{{{}}}", v.join(", "))
}

/// Verma submodules prescribed by an extension claim, extracted from the top:
/// at each claimed weight, maximal vectors independent of what was already taken.
/// Records that the generated submodules are free, that their sum is direct, and
/// that the quotient has a Verma flag consisting of the claimed top.
fn extension_structure(cert: &mut DecompositionCertificate, name: &str, m: &TruncatedModule, claim: &Claim) -> Result<Vec<Submodule>> {
    let mut subs_w = claim.sub.clone();
    subs_w.sort_by_key(|w| (m.offset_of(w).map_or(u32::MAX, |o| crate::module::ht(&o)), std::cmp::Reverse(w.clone())));
    let mut total = Submodule::zero();
    let mut subs = Vec::new();
    for w in &subs_w {
        let Some(o) = m.offset_of(w) else {
            cert.check(format!("{name}: weight {w} in window"), false, "");
            return Ok(subs);
        };
        let have = total.space_or_zero(m, &o);
        let mv = m.maximal_vectors_at(&o);
        let Some(v) = mv.vectors().iter().find(|v| !have.contains(v)).cloned() else {
            cert.check(format!("{name}: new maximal vector at {w}"), false, "");
            return Ok(subs);
        };
        let s = saturate(m, Submodule::zero(), vec![(o, v)]);
        let free = s.character(m).same_dims(&FormalCharacter::verma(m.ty(), w, m.top(), m.depth()));
        cert.check(format!("{name}: maximal vector at {w} generates a Verma submodule"), free, "");
        total = total.sum(&s);
        subs.push(s);
    }
    let (direct, _) = is_direct(m, &subs)?;
    cert.check(format!("{name}: the Verma submodules form a direct sum"), direct, "");
    let q = quotient(m, &total)?;
    let qf = flag_steps(&q.module);
    cert.check(
        format!("{name}: quotient has Verma flag {{{}}}", claim.quotient),
        qf.as_deref() == Some(std::slice::from_ref(&claim.quotient)),
        qf.map(|f| format!("found {}", weights_text(&f))).unwrap_or_else(|| "no Verma flag".into()),
    );
    Ok(subs)
}

/// Split `m`, match pieces against `claims` by Verma flag, and record everything in `cert`.
fn match_claims(cert: &mut DecompositionCertificate, m: &TruncatedModule, claims: &[Claim], tag: &str) -> Result<Vec<Piece>> {
    let pieces = split_into_indecomposables(m)?;
    let mut found: Vec<(Vec<Weight>, usize)> = Vec::new();
    for (i, p) in pieces.iter().enumerate() {
        let pm = p.sub.as_module(m);
        match flag_steps(&pm) {
            Some(f) => found.push((f, i)),
            None => cert.check(format!("{tag}piece {} has a Verma flag", i + 1), false, ""),
        }
    }
    let mut want: Vec<Vec<Weight>> = claims.iter().map(Claim::flag).collect();
    want.sort();
    let mut got: Vec<Vec<Weight>> = found.iter().map(|(f, _)| f.clone()).collect();
    got.sort();
    let describe = |v: &[Vec<Weight>]| v.iter().map(|f| weights_text(f)).collect::<Vec<_>>().join(" + ");
    cert.check(
        format!("{tag}indecomposable pieces match the claimed summands"),
        want == got,
        format!("claimed {}; found {}", describe(&want), describe(&got)),
    );
    let mut used = vec![false; pieces.len()];
    for claim in claims {
        let hit = found.iter().find(|(f, i)| !used[*i] && *f == claim.flag()).map(|(_, i)| *i);
        let Some(i) = hit else { continue };
        used[i] = true;
        let p = &pieces[i];
        let pm = p.sub.as_module(m);
        let name = format!("{tag}{}", claim.label);
        cert.check(
            format!("{name}: indecomposable within window"),
            p.evidence.verdict == Verdict::IndecomposableWithinWindow,
            format!("commutant dimension {}, margin {}", p.evidence.commutant_dim, p.evidence.margin),
        );
        if claim.kind == SummandKind::Extension {
            extension_structure(cert, &name, &pm, claim)?;
        }
        cert.summands.push(SummandCertificate {
            kind: claim.kind,
            label: claim.label.clone(),
            params: json!({
                "quotient": weight_json(&claim.quotient),
                "sub": claim.sub.iter().map(weight_json).collect::<Vec<_>>(),
            }),
            sub: p.sub.clone(),
            character: p.sub.character(m),
            indecomposability: Some(p.evidence.clone()),
            flag: verma_flag(&pm),
        });
    }
    for (i, p) in pieces.iter().enumerate() {
        if used[i] {
            continue;
        }
        let pm = p.sub.as_module(m);
        let f = verma_flag(&pm);
        let label = f.as_ref().map(|f| format!("unclaimed piece with flag {}", weights_text(&f.steps))).unwrap_or_default();
        cert.summands.push(SummandCertificate {
            kind: SummandKind::UnknownIndecomposable,
            label,
            params: json!({}),
            sub: p.sub.clone(),
            character: p.sub.character(m),
            indecomposability: Some(p.evidence.clone()),
            flag: f,
        });
    }
    Ok(pieces)
}

/// Verify one row of the tensor tables at the given depth.
pub fn verify_block_tensor_table(case: &TableCase, depth: u32) -> Result<DecompositionCertificate> {
    match case {
        TableCase::Sl3(k) => verify_sl3_case(*k, depth),
        TableCase::Sl3Vanishing => verify_sl3_vanishing(depth),
        TableCase::Sl2(t) => verify_sl2(*t, depth),
    }
}

fn verify_sl3_case(k: u8, depth: u32) -> Result<DecompositionCertificate> {
    if !(1..=7).contains(&k) {
        return Err(Error::Spec(format!("sl3 case {k} does not exist")));
    }
    if depth < 5 {
        return Err(Error::Window(format!("depth {depth} is too small for the sl3 table; use at least 5")));
    }
    let ty = CartanType::A2;
    let (a, b, claims) = sl3_case(k);
    let ma = verma(ty, &dot0(a), depth)?;
    let mb = verma(ty, &dot0(b), depth)?;
    let t = tensor(&ma, &mb, depth)?;
    let blk = block_component(&t, &Weight::zero(2))?;
    let bm = blk.as_module(&t);
    let target = json!({
        "case": k,
        "left": verma_name(a),
        "right": verma_name(b),
        "block": "chi_0",
        "highest_weight": weight_json(bm.top()),
    });
    let mut cert = DecompositionCertificate::new(target, bm.acting_tag(), depth);
    let mut want: Vec<Weight> = claims.iter().flat_map(Claim::flag).collect();
    want.sort();
    let flag = flag_steps(&bm);
    cert.check(
        "block Verma flag",
        flag.as_deref() == Some(&want[..]),
        format!(
            "claimed {}; found {}",
            weights_text(&want),
            flag.as_deref().map(weights_text).unwrap_or_else(|| "none".into())
        ),
    );
    let pieces = match_claims(&mut cert, &bm, &claims, "")?;
    let subs: Vec<Submodule> = pieces.iter().map(|p| p.sub.clone()).collect();
    let (_, dev) = is_direct(&bm, &subs)?;
    cert.check("pieces form a direct-sum decomposition of the block", dev.is_decomposition(), "");
    cert.directness = Some(dev);
    if k == 1 {
        induced_m_alpha_checks(&mut cert, &ma, &t, &blk, depth)?;
    }
    Ok(cert)
}

/// The block of the module induced from `M_a`, realized inside `M(0) (x) M(0)` as
/// the submodule generated by `v+ (x) M_a`, and the checks on its structure.
fn induced_m_alpha_checks(
    cert: &mut DecompositionCertificate,
    m0: &TruncatedModule,
    t: &TruncatedModule,
    blk: &Submodule,
    depth: u32,
) -> Result<()> {
    let (_, ma) = crate::module::m_alpha_basis(&Weight::zero(2), crate::module::MAlpha::Alpha, depth)?;
    let top = crate::exactla::unit(1, 0);
    let mut seeds = Vec::new();
    for (o, s) in ma.spaces() {
        for v in s.vectors() {
            seeds.push(tensor_pure(m0, m0, depth, (&[0, 0], &top), (o, v))?);
        }
    }
    let induced = saturate(t, Submodule::zero(), seeds);
    let n_amb = induced.intersect(blk);
    let bm = blk.as_module(t);
    let n = blk.restrict_to(&n_amb);
    let nm = n.as_module(&bm);
    let name = "N";
    let flag = flag_steps(&nm);
    let mut want = vec![dot0(SA), dot0(SASB), dot0(SBSA), dot0(W0)];
    want.sort();
    cert.check(
        format!("{name}: Verma flag {}", weights_text(&want)),
        flag.as_deref() == Some(&want[..]),
        flag.as_deref().map(weights_text).unwrap_or_else(|| "none".into()),
    );
    let at = |w: &Weight| nm.maximal_vectors(w).map(|s| s.dim()).unwrap_or(0);
    let k = at(&dot0(SASB));
    cert.check(format!("{name}: maximal vectors at {} span dimension 2", dot0(SASB)), k == 2, format!("found {k}"));
    let claim = ext_claim(W0, &[SASB, SBSA, SA]);
    let subs = extension_structure(cert, name, &nm, &claim)?;
    let pieces = split_into_indecomposables(&nm)?;
    let piece_flags: Vec<Vec<Weight>> =
        pieces.iter().map(|p| flag_steps(&p.sub.as_module(&nm)).unwrap_or_default()).collect();
    cert.check(
        format!("{name}: indecomposable within window"),
        pieces.len() == 1 && pieces[0].evidence.verdict == Verdict::IndecomposableWithinWindow,
        format!(
            "split into {}",
            piece_flags.iter().map(|f| weights_text(f)).collect::<Vec<_>>().join(" + ")
        ),
    );
    if subs.len() == 3 {
        // subs are ordered from the top: M(s_a.0), then M(s_b s_a.0) and M(s_a s_b.0)
        let n1 = quotient(&nm, &subs[0])?;
        let ev1 = is_indecomposable_window(&n1.module, default_margin(&n1.module)?)?;
        cert.check(
            format!("N' = N/{}: indecomposable within window", verma_name(SA)),
            ev1.verdict == Verdict::IndecomposableWithinWindow,
            format!("verdict {:?}, commutant dimension {}", ev1.verdict, ev1.commutant_dim),
        );
        let n2 = quotient(&nm, &subs[1].sum(&subs[2]))?;
        let k = n2.module.maximal_vectors(&dot0(W0)).map(|s| s.dim()).unwrap_or(0);
        cert.check(
            format!("N'' = N/({} + {}): maximal vectors at {} span dimension 1", verma_name(SASB), verma_name(SBSA), dot0(W0)),
            k == 1,
            format!("found {k}"),
        );
        // both copies taken from one piece instead
        for p in &pieces {
            let pm = p.sub.as_module(&nm);
            let mut copies = Submodule::zero();
            for w in [dot0(SASB), dot0(SBSA)] {
                let o = nm.offset_or_err(&w)?;
                for v in pm.maximal_vectors(&w)?.vectors() {
                    copies = saturate(&nm, copies, vec![(o, p.sub.space_or_zero(&nm, &o).combine(v))]);
                }
            }
            if copies.is_zero() || subs[0].contains_sub(&copies) {
                continue;
            }
            let alt = quotient(&nm, &copies)?;
            let k = alt.module.maximal_vectors(&dot0(W0)).map(|s| s.dim()).unwrap_or(0);
            cert.check(
                format!(
                    "N'' with both copies taken from the piece with flag {}: maximal vectors at {} span dimension 1",
                    weights_text(&flag_steps(&pm).unwrap_or_default()),
                    dot0(W0)
                ),
                k == 1,
                format!("found {k}"),
            );
        }
    }
    cert.target.as_object_mut().expect("object").insert("n_dims".into(), json!(nm.total_dim()));
    Ok(())
}

fn verify_sl3_vanishing(depth: u32) -> Result<DecompositionCertificate> {
    let ty = CartanType::A2;
    let mut cert = DecompositionCertificate::new(json!({"claim": "vanishing principal-block products"}), "g".into(), depth);
    for (a, b) in sl3_vanishing_pairs() {
        let ma = verma(ty, &dot0(&a), depth)?;
        let mb = verma(ty, &dot0(&b), depth)?;
        let t = tensor(&ma, &mb, depth)?;
        let blk = block_component(&t, &Weight::zero(2))?;
        cert.check(
            format!("{} (x) {}: principal block is zero", verma_name(&a), verma_name(&b)),
            blk.is_zero(),
            format!("block dimension {}", blk.total_dim()),
        );
    }
    Ok(cert)
}

fn verify_sl2(table: Sl2Table, depth: u32) -> Result<DecompositionCertificate> {
    if depth < 4 {
        return Err(Error::Window(format!("depth {depth} is too small for the sl2 table; use at least 4")));
    }
    let ty = CartanType::A1;
    let w = |k: i64| Weight::from_ints(&[k]);
    let m0 = verma(ty, &w(0), depth)?;
    let (right, name) = match table {
        Sl2Table::VermaVerma => (m0.clone(), "M(0)"),
        Sl2Table::VermaDual => (m0.dual()?, "M(0)^dual"),
        Sl2Table::VermaProjective => (projective_a1(&w(0), depth)?, "P(-2)"),
    };
    let t = tensor(&m0, &right, depth)?;
    let bd = block_decompose(&t)?;
    let target = json!({"left": "M(0)", "right": name, "top": weight_json(t.top())});
    let mut cert = DecompositionCertificate::new(target, t.acting_tag(), depth);
    let copies = if table == Sl2Table::VermaProjective { 2 } else { 1 };
    let mut all = Vec::new();
    for (label, sub) in &bd.blocks {
        let bm = sub.as_module(&t);
        let top = bm.maximal_vector_table().into_iter().map(|(o, _)| bm.weight_of(&o)).max();
        let Some(top) = top else { continue };
        let lowest = bm.maximal_vector_table().into_iter().map(|(o, _)| crate::module::ht(&o)).max().unwrap_or(0);
        if lowest >= depth {
            continue;
        }
        let tag = format!("{}: ", label);
        let claims: Vec<Claim> = if label.rep == w(0) {
            match table {
                Sl2Table::VermaVerma => vec![sl2_verma(0), sl2_verma(-2)],
                Sl2Table::VermaDual => vec![Claim {
                    kind: SummandKind::Projective,
                    label: "P(-2)".into(),
                    quotient: w(-2),
                    sub: vec![w(0)],
                }],
                Sl2Table::VermaProjective => vec![sl2_verma(0), sl2_verma(-2), sl2_verma(-2)],
            }
        } else {
            let k = top.pairing(0).to_i64().expect("integral");
            vec![sl2_verma(k); copies]
        };
        let pieces = match_claims(&mut cert, &bm, &claims, &tag)?;
        if table == Sl2Table::VermaDual && label.rep == w(0) {
            cert.check(format!("{tag}the block is tilting"), super::flag::is_tilting(&bm), "");
        }
        for p in pieces {
            all.push(sub.lift(&p.sub));
        }
    }
    let (_, dev) = is_direct(&t, &all)?;
    cert.check("pieces are independent in the product", dev.is_direct() && dev.total_direct, "");
    cert.directness = Some(dev);
    Ok(cert)
}

fn sl2_verma(k: i64) -> Claim {
    Claim { kind: SummandKind::Verma, label: format!("M({k})"), quotient: Weight::from_ints(&[k]), sub: vec![] }
}
