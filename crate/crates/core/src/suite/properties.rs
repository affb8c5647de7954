//! Property suites over generated examples, and the character-level tensor identity.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Item, Outcome};
use crate::decomp::{decompose_b, head_complement, is_direct, projective_a1, Catalogued};
use crate::error::Result;
use crate::module::{
    generalized_verma, ht, induce, levi_simple, m_alpha_basis, saturate, simple, tensor, tensor_weight_dim, verma,
    FormalCharacter, Levi, MAlpha, Offset, Submodule, TruncatedModule,
};
use crate::rat::Q;
use crate::rootdata::{CartanType, Weight};
use crate::tensorblocks::{block_decompose, central_degrees, central_element_action};

const SEED: u64 = 0x5eed_2024;

fn w(c: &[i64]) -> Weight {
    Weight::from_ints(c)
}

fn interior(m: &TruncatedModule) -> FormalCharacter {
    m.character().truncate(m.depth().saturating_sub(1))
}

/// A varied collection of constructed modules.
fn zoo() -> Result<Vec<(String, TruncatedModule)>> {
    use CartanType::{A1, A2};
    let mut out = Vec::new();
    for l in [-3i64, -1, 0, 1, 3] {
        let m = verma(A1, &w(&[l]), 6)?;
        out.push((format!("A1 M({l})^dual"), m.dual()?));
        out.push((format!("A1 M({l}) over b"), m.restrict(Levi::borel())?));
        out.push((format!("A1 M({l})"), m));
    }
    for l in [0i64, 2] {
        out.push((format!("A1 L({l})"), simple(A1, &w(&[l]), 6)?));
        out.push((format!("A1 P({})", -l - 2), projective_a1(&w(&[l]), 6)?));
    }
    let m0 = verma(A1, &w(&[0]), 6)?;
    out.push(("A1 M(0) (x) M(0)".into(), tensor(&m0, &m0, 6)?));
    out.push(("A1 M(0) (x) M(0)^dual".into(), tensor(&m0, &m0.dual()?, 6)?));
    for l in [[0i64, 0], [1, 0], [1, 1], [-1, -1], [-2, 1]] {
        let m = verma(A2, &w(&l), 4)?;
        out.push((format!("A2 M({l:?})^dual"), m.dual()?));
        out.push((format!("A2 M({l:?})"), m));
    }
    out.push(("A2 L([1,0])".into(), simple(A2, &w(&[1, 0]), 4)?));
    let pa = Levi::from_indices(&[0]);
    out.push(("A2 generalized M([1,0])".into(), generalized_verma(A2, &w(&[1, 0]), pa, 4)?));
    out.push(("A2 Levi simple L([1,0])".into(), levi_simple(A2, &w(&[1, 0]), pa, 4)?));
    let (m, sub) = m_alpha_basis(&w(&[0, 0]), MAlpha::Alpha, 5)?;
    out.push(("A2 M_a".into(), sub.as_module(&m)));
    let a0 = verma(A2, &w(&[0, 0]), 3)?;
    out.push(("A2 M(0) (x) M(0)".into(), tensor(&a0, &a0, 3)?));
    out.push(("A2 induced M(0) over b".into(), induce(&a0.restrict(Levi::borel())?, 3)?));
    Ok(out)
}

fn relations(_: bool) -> Result<Outcome> {
    let zoo = zoo()?;
    for (name, m) in &zoo {
        if let Err(e) = m.check_relations() {
            return Ok(Outcome::fail(format!("{name}: {e}")));
        }
    }
    Ok(Outcome::pass(format!("{} modules satisfy the defining relations on interior weights", zoo.len())))
}

fn random_weight(rng: &mut ChaCha8Rng, rank: usize) -> Weight {
    let c: Vec<i64> = (0..rank).map(|_| rng.gen_range(-3..=3)).collect();
    w(&c)
}

fn convolution(_: bool) -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut cache: HashMap<String, (FormalCharacter, FormalCharacter, TruncatedModule)> = HashMap::new();
    let mut tested = 0;
    while tested < 120 {
        let (ty, depth) = if rng.gen_bool(0.5) { (CartanType::A1, 6) } else { (CartanType::A2, 3) };
        let (l1, l2) = (random_weight(&mut rng, ty.rank()), random_weight(&mut rng, ty.rank()));
        let dual = rng.gen_bool(0.5);
        let key = format!("{ty:?} {l1} {l2} {dual}");
        if !cache.contains_key(&key) {
            let m = verma(ty, &l1, depth)?;
            let n = verma(ty, &l2, depth)?;
            let n = if dual { n.dual()? } else { n };
            let p = tensor(&m, &n, depth)?;
            cache.insert(key.clone(), (m.character(), n.character(), p));
        }
        let (cm, cn, p) = &cache[&key];
        let offs: Vec<Offset> = p.window().into_iter().filter(|o| p.is_interior(o)).collect();
        let o = offs[rng.gen_range(0..offs.len())];
        let nu = p.weight_of(&o);
        let want = tensor_weight_dim(cm, cn, &nu)?;
        if p.dim(&o) != want {
            return Ok(Outcome::fail(format!("{key}: dimension {} at {nu}, convolution gives {want}", p.dim(&o))));
        }
        tested += 1;
    }
    Ok(Outcome::pass(format!("{tested} random weights over {} tensor products", cache.len())))
}

fn random_vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<Q> {
    loop {
        let v: Vec<Q> = (0..n).map(|_| Q::from(rng.gen_range(-2i64..=2))).collect();
        if v.iter().any(|x| !x.is_zero()) {
            return v;
        }
    }
}

fn random_generated(rng: &mut ChaCha8Rng, m: &TruncatedModule) -> Submodule {
    let offs: Vec<Offset> = m.support().into_iter().filter(|o| ht(o) + 1 < m.depth()).collect();
    let o = offs[rng.gen_range(0..offs.len())];
    let v = random_vector(rng, m.dim(&o));
    saturate(m, Submodule::zero(), vec![(o, v)])
}

/// A submodule generated by a random vector of `s`.
fn random_inside(rng: &mut ChaCha8Rng, m: &TruncatedModule, s: &Submodule) -> Option<Submodule> {
    let offs: Vec<Offset> = m.support().into_iter().filter(|o| s.dim(o) > 0 && ht(o) + 1 < m.depth()).collect();
    if offs.is_empty() {
        return None;
    }
    let o = offs[rng.gen_range(0..offs.len())];
    let basis = s.space_or_zero(m, &o);
    let coef = random_vector(rng, basis.dim());
    let mut v = vec![Q::zero(); m.dim(&o)];
    for (c, b) in coef.iter().zip(basis.vectors()) {
        for (x, y) in v.iter_mut().zip(b) {
            *x += &(c * y);
        }
    }
    Some(saturate(m, Submodule::zero(), vec![(o, v)]))
}

fn directness(_: bool) -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 1);
    let a1 = verma(CartanType::A1, &w(&[0]), 6)?;
    let a2 = verma(CartanType::A2, &w(&[0, 0]), 3)?;
    let bases = [
        tensor(&a1, &a1, 6)?,
        tensor(&a1, &a1.dual()?, 6)?,
        tensor(&a2, &a2, 3)?,
        tensor(&a1, &a1, 6)?.restrict(Levi::borel())?,
    ];
    let (mut direct, mut not_direct) = (0, 0);
    for k in 0..64 {
        let m = &bases[k % bases.len()];
        let mut subs = vec![random_generated(&mut rng, m)];
        let extra = rng.gen_range(1..=2);
        for _ in 0..extra {
            let s = if rng.gen_bool(0.3) {
                let j = rng.gen_range(0..subs.len());
                random_inside(&mut rng, m, &subs[j]).unwrap_or_else(|| random_generated(&mut rng, m))
            } else {
                random_generated(&mut rng, m)
            };
            subs.push(s);
        }
        let (_, ev) = is_direct(m, &subs)?;
        if ev.is_direct() != ev.total_direct {
            return Ok(Outcome::fail(format!(
                "family {k}: maximal-vector directness {} but total directness {}",
                ev.is_direct(),
                ev.total_direct
            )));
        }
        if ev.total_direct {
            direct += 1;
        } else {
            not_direct += 1;
        }
    }
    let detail = format!("{} families: {direct} direct, {not_direct} not direct", direct + not_direct);
    Ok(if direct > 0 && not_direct > 0 { Outcome::pass(detail) } else { Outcome::fail(format!("{detail}; one side untested")) })
}

fn head_uniqueness(_: bool) -> Result<Outcome> {
    let mut done = Vec::new();
    for l in 0..=4i64 {
        head_complement(&verma(CartanType::A1, &w(&[l]), 10)?, Levi::borel())?;
        done.push(format!("[{l}]"));
    }
    for l in [[0i64, 0], [1, 0], [1, 1]] {
        head_complement(&verma(CartanType::A2, &w(&l), 6)?, Levi::borel())?;
        done.push(format!("{l:?}"));
    }
    Ok(Outcome::pass(format!("one-dimensional solution space for {}", done.join(", "))))
}

fn catalogue() -> Vec<Catalogued> {
    let mut out = Vec::new();
    for l in 0..=4i64 {
        let lambda = w(&[l]);
        out.push(Catalogued::Verma { ty: CartanType::A1, lambda: lambda.clone(), word: vec![] });
        out.push(Catalogued::Projective { lambda: lambda.clone() });
        out.push(Catalogued::DualVerma { lambda: lambda.clone() });
        out.push(Catalogued::Simple { lambda });
    }
    for word in [vec![], vec![0], vec![1], vec![0, 1], vec![1, 0], vec![0, 1, 0]] {
        out.push(Catalogued::Verma { ty: CartanType::A2, lambda: w(&[0, 0]), word });
    }
    out
}

fn krull_schmidt(_: bool) -> Result<Outcome> {
    let (lo, hi) = (6, 8);
    let cat = catalogue();
    for ctx in &cat {
        let a = decompose_b(&ctx.build(lo)?, ctx)?;
        let b = decompose_b(&ctx.build(hi)?, ctx)?;
        if !a.valid() || !b.valid() {
            return Ok(Outcome::fail(format!("{}: certificate invalid at depth {lo} or {hi}", ctx.name())));
        }
        if a.kinds() != b.kinds() {
            return Ok(Outcome::fail(format!("{}: {:?} at depth {lo}, {:?} at depth {hi}", ctx.name(), a.kinds(), b.kinds())));
        }
        for (x, y) in a.summands.iter().zip(&b.summands) {
            if !x.character.truncate(lo - 1).same_dims(&y.character.truncate(lo - 1)) {
                return Ok(Outcome::fail(format!("{}: summand {} changes on the interior", ctx.name(), x.label)));
            }
        }
    }
    Ok(Outcome::pass(format!("{} catalogued modules agree between depths {lo} and {hi}", cat.len())))
}

fn center_commutes(_: bool) -> Result<Outcome> {
    let a1 = verma(CartanType::A1, &w(&[0]), 6)?;
    let a2 = verma(CartanType::A2, &w(&[0, 0]), 3)?;
    let mods = [
        tensor(&a1, &a1, 6)?,
        projective_a1(&w(&[1]), 6)?,
        tensor(&a2, &a2, 3)?,
        verma(CartanType::A2, &w(&[1, 0]), 4)?.dual()?,
    ];
    let mut pairs = 0;
    for m in &mods {
        for &k in central_degrees(m.ty()) {
            let mut cache: HashMap<Offset, crate::exactla::RatMatrix> = HashMap::new();
            for o in m.support().into_iter().filter(|o| m.is_interior(o)) {
                for g in m.gens() {
                    let t = m.target(g, &o);
                    if !m.is_interior(&t) || m.dim(&t) == 0 {
                        continue;
                    }
                    let Some(a) = m.action(g, &o) else { continue };
                    for p in [o, t] {
                        if let std::collections::hash_map::Entry::Vacant(e) = cache.entry(p) {
                            e.insert(central_element_action(m, k, &m.weight_of(&p))?);
                        }
                    }
                    if cache[&t].mul(&a) != a.mul(&cache[&o]) {
                        return Ok(Outcome::fail(format!("C{k} fails to commute with {g:?} at {}", m.weight_of(&o))));
                    }
                    pairs += 1;
                }
            }
        }
    }
    Ok(Outcome::pass(format!("{pairs} generator and weight pairs commute with the center")))
}

fn block_characters(_: bool) -> Result<Outcome> {
    let a1 = verma(CartanType::A1, &w(&[0]), 6)?;
    let a2 = verma(CartanType::A2, &w(&[0, 0]), 4)?;
    let mods = [
        tensor(&a1, &a1, 6)?,
        tensor(&a1, &a1.dual()?, 6)?,
        tensor(&verma(CartanType::A1, &w(&[1]), 6)?, &verma(CartanType::A1, &w(&[-1]), 6)?, 6)?,
        tensor(&a2, &a2, 4)?,
        tensor(&verma(CartanType::A2, &w(&[1, 0]), 3)?, &verma(CartanType::A2, &w(&[0, 1]), 3)?, 3)?,
    ];
    let mut blocks = 0;
    for m in &mods {
        let d = block_decompose(m)?;
        let mut sum = FormalCharacter::new(m.ty(), m.top().clone(), m.depth());
        for (_, s) in &d.blocks {
            sum = sum.add(&s.character(m));
        }
        blocks += d.blocks.len();
        if !sum.truncate(m.depth() - 1).same_dims(&interior(m)) {
            return Ok(Outcome::fail(format!("block characters of {} do not add up", m.construction())));
        }
    }
    Ok(Outcome::pass(format!("{blocks} blocks over {} tensor products", mods.len())))
}

fn tensor_identity(ty: CartanType) -> impl Fn(bool) -> Result<Outcome> {
    move |_| {
        let depth = 6;
        let m0 = verma(ty, &Weight::zero(ty.rank()), depth)?;
        let ind = induce(&m0.restrict(Levi::borel())?, depth)?;
        let prod = tensor(&m0, &m0, depth)?;
        let (a, b) = (interior(&ind), interior(&prod));
        Ok(if a.same_dims(&b) {
            Outcome::pass(format!("{} interior weights agree, total dimension {}", a.as_pairs().len(), a.total()))
        } else {
            Outcome::fail("characters differ on the interior")
        })
    }
}

pub(super) fn items() -> Vec<Item> {
    vec![
        Item::new(5, "property-relations", relations),
        Item::new(5, "property-convolution", convolution),
        Item::new(5, "property-directness", directness),
        Item::new(5, "property-head-complement", head_uniqueness),
        Item::new(5, "property-krull-schmidt", krull_schmidt),
        Item::new(5, "property-center", center_commutes),
        Item::new(5, "property-block-characters", block_characters),
        Item::new(6, "tensor-identity-a1", tensor_identity(CartanType::A1)),
        Item::new(6, "tensor-identity-a2", tensor_identity(CartanType::A2)),
    ]
}
