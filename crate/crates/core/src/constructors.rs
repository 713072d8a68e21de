//! Declarative group specifications and the builders that realise them as
//! permutation groups.
//!
//! Specs are JSON objects with a `"kind"` discriminator; see the README for
//! the grammar. Each kind has a fixed list of *defining generators* (in the
//! order documented on [`GroupSpec`]); semidirect actions are expressed in
//! terms of those.

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::permgroup::{is_prime, Group, GroupError, Permutation, DEFAULT_CAP};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpecError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid spec: {0}")]
    InvalidSpec(String),
    #[error("semidirect action is not an automorphism assignment: {0}")]
    ActionNotAutomorphism(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A group description.
///
/// Defining generators, in order:
/// * `cyclic(n)`: the n-cycle `x ↦ x+1` (none for `n = 1`).
/// * `dihedral(order)`: rotation `x ↦ x+1`, reflection `x ↦ -x` on `order/2` points;
///   order 2 is `C2` on two points and order 4 the Klein group on four.
/// * `symmetric(n)`: `(0,1)`, `(0,..,n-1)`.
/// * `alternating(n)`: `(0,1,i)` for `i = 2..n`.
/// * `extraspecial_plus(p)`: `x`, `y`, `z = [x,y]` of the Heisenberg group mod `p`.
/// * `frobenius_metacyclic(q, d)`: `x ↦ x+1`, `x ↦ r·x` with `r` of order `d` mod `q`.
/// * `semidirect`: the normal part's generators, then the complement's.
/// * `direct`: each part's generators in turn.
/// * `perm`: as listed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupSpec {
    Cyclic {
        n: u32,
    },
    Dihedral {
        order: u32,
    },
    Symmetric {
        n: u32,
    },
    Alternating {
        n: u32,
    },
    ExtraspecialPlus {
        p: u32,
    },
    FrobeniusMetacyclic {
        q: u32,
        d: u32,
    },
    /// `normal ⋊ complement`. `action[i][j]` is the image of the normal
    /// part's generator `j` under complement generator `i`, written as a word
    /// (list of normal-generator indices, empty for the identity).
    Semidirect {
        normal: Box<GroupSpec>,
        complement: Box<GroupSpec>,
        action: Vec<Vec<Vec<u32>>>,
    },
    Direct {
        parts: Vec<GroupSpec>,
    },
    /// Generators given as lists of 0-based cycles.
    Perm {
        degree: u32,
        generators: Vec<Vec<Vec<u32>>>,
    },
}

impl GroupSpec {
    /// `(C7 ⋊ C6) × extraspecial(5³)`.
    pub fn example_31a() -> GroupSpec {
        GroupSpec::Direct {
            parts: vec![
                GroupSpec::FrobeniusMetacyclic { q: 7, d: 6 },
                GroupSpec::ExtraspecialPlus { p: 5 },
            ],
        }
    }

    /// `D42 × extraspecial(5³)`.
    pub fn example_31b() -> GroupSpec {
        GroupSpec::Direct {
            parts: vec![
                GroupSpec::Dihedral { order: 42 },
                GroupSpec::ExtraspecialPlus { p: 5 },
            ],
        }
    }

    /// Order predicted from the parameters, without building anything.
    /// `None` for `perm` and for specs containing one.
    pub fn expected_order(&self) -> Option<u64> {
        Some(match self {
            GroupSpec::Cyclic { n } => *n as u64,
            GroupSpec::Dihedral { order } => *order as u64,
            GroupSpec::Symmetric { n } => (1..=*n as u64).product(),
            GroupSpec::Alternating { n } => {
                let f: u64 = (1..=*n as u64).product();
                if *n >= 2 {
                    f / 2
                } else {
                    1
                }
            }
            GroupSpec::ExtraspecialPlus { p } => (*p as u64).pow(3),
            GroupSpec::FrobeniusMetacyclic { q, d } => *q as u64 * *d as u64,
            GroupSpec::Semidirect {
                normal, complement, ..
            } => normal.expected_order()? * complement.expected_order()?,
            GroupSpec::Direct { parts } => {
                let mut o = 1;
                for p in parts {
                    o *= p.expected_order()?;
                }
                o
            }
            GroupSpec::Perm { .. } => return None,
        })
    }

    /// Parameter checks that need no group construction.
    pub fn validate(&self) -> Result<(), SpecError> {
        let bad = |msg: String| Err(SpecError::InvalidSpec(msg));
        match self {
            GroupSpec::Cyclic { n } | GroupSpec::Symmetric { n } | GroupSpec::Alternating { n } => {
                if *n == 0 {
                    return bad(format!("{} needs n >= 1", self.kind()));
                }
            }
            GroupSpec::Dihedral { order } => {
                if *order < 2 || order % 2 != 0 {
                    return bad(format!("dihedral order must be even and >= 2, got {order}"));
                }
            }
            GroupSpec::ExtraspecialPlus { p } => {
                if *p == 2 || !is_prime(*p as u64) {
                    return bad(format!("extraspecial_plus needs an odd prime, got {p}"));
                }
            }
            GroupSpec::FrobeniusMetacyclic { q, d } => {
                if !is_prime(*q as u64) {
                    return bad(format!("frobenius_metacyclic needs prime q, got {q}"));
                }
                if *d <= 1 || (q - 1) % d != 0 {
                    return bad(format!(
                        "frobenius_metacyclic needs 1 < d | q-1, got q={q}, d={d}"
                    ));
                }
            }
            GroupSpec::Semidirect {
                normal, complement, ..
            } => {
                normal.validate()?;
                complement.validate()?;
            }
            GroupSpec::Direct { parts } => {
                if parts.is_empty() {
                    return bad("direct product needs at least one part".into());
                }
                for p in parts {
                    p.validate()?;
                }
            }
            GroupSpec::Perm { degree, .. } => {
                if *degree == 0 {
                    return bad("perm degree must be >= 1".into());
                }
            }
        }
        Ok(())
    }

    pub fn kind(&self) -> &'static str {
        match self {
            GroupSpec::Cyclic { .. } => "cyclic",
            GroupSpec::Dihedral { .. } => "dihedral",
            GroupSpec::Symmetric { .. } => "symmetric",
            GroupSpec::Alternating { .. } => "alternating",
            GroupSpec::ExtraspecialPlus { .. } => "extraspecial_plus",
            GroupSpec::FrobeniusMetacyclic { .. } => "frobenius_metacyclic",
            GroupSpec::Semidirect { .. } => "semidirect",
            GroupSpec::Direct { .. } => "direct",
            GroupSpec::Perm { .. } => "perm",
        }
    }

    /// Compact JSON form; [`parse_spec`] inverts it.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("group specs always serialize")
    }
}

/// Parses the JSON spec grammar and validates parameters.
pub fn parse_spec(text: &str) -> Result<GroupSpec, SpecError> {
    let spec: GroupSpec = serde_json::from_str(text).map_err(|e| SpecError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    spec.validate()?;
    Ok(spec)
}

/// Builds with the default enumeration cap.
pub fn build(spec: &GroupSpec) -> Result<Group, SpecError> {
    build_with_cap(spec, DEFAULT_CAP)
}

pub fn build_with_cap(spec: &GroupSpec, cap: usize) -> Result<Group, SpecError> {
    spec.validate()?;
    Ok(realise(spec, cap)?.group)
}

/// A built group plus the defining generators the spec refers to.
struct Realised {
    degree: usize,
    gens: Vec<Permutation>,
    group: Group,
}

fn perm_from_fn(n: u32, f: impl Fn(u32) -> u32) -> Permutation {
    Permutation::from_images((0..n).map(f).collect()).expect("builder produces a bijection")
}

fn finish(degree: usize, gens: Vec<Permutation>, cap: usize) -> Result<Realised, SpecError> {
    let group = Group::generate(degree, &gens, cap)?;
    Ok(Realised {
        degree,
        gens,
        group,
    })
}

fn least_primitive_root(q: u32) -> u32 {
    let q = q as u64;
    let factors: Vec<u64> = crate::permgroup::factorize(q - 1)
        .into_iter()
        .map(|(p, _)| p)
        .collect();
    (2..q)
        .find(|&g| factors.iter().all(|&f| mod_pow(g, (q - 1) / f, q) != 1))
        .unwrap_or(1) as u32
}

fn mod_pow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

fn realise(spec: &GroupSpec, cap: usize) -> Result<Realised, SpecError> {
    match spec {
        GroupSpec::Cyclic { n } => {
            let n = *n;
            let gens = if n > 1 {
                vec![perm_from_fn(n, |x| (x + 1) % n)]
            } else {
                vec![]
            };
            finish(n as usize, gens, cap)
        }
        GroupSpec::Dihedral { order } => {
            let n = order / 2;
            match n {
                1 => finish(2, vec![perm_from_fn(2, |x| 1 - x)], cap),
                2 => finish(
                    4,
                    vec![perm_from_fn(4, |x| x ^ 1), perm_from_fn(4, |x| x ^ 2)],
                    cap,
                ),
                _ => finish(
                    n as usize,
                    vec![
                        perm_from_fn(n, |x| (x + 1) % n),
                        perm_from_fn(n, |x| (n - x) % n),
                    ],
                    cap,
                ),
            }
        }
        GroupSpec::Symmetric { n } => {
            let n = *n;
            let mut gens = Vec::new();
            if n >= 2 {
                gens.push(perm_from_fn(n, |x| if x < 2 { 1 - x } else { x }));
            }
            if n >= 3 {
                gens.push(perm_from_fn(n, |x| (x + 1) % n));
            }
            finish(n as usize, gens, cap)
        }
        GroupSpec::Alternating { n } => {
            let n = *n;
            let gens = (2..n)
                .map(|i| Permutation::from_cycles(n as usize, &[vec![0, 1, i]]).expect("3-cycle"))
                .collect();
            finish(n as usize, gens, cap)
        }
        GroupSpec::ExtraspecialPlus { p } => {
            // Heisenberg group (a,b,c)·(a',b',c') = (a+a', b+b', c+c'+ab') acting on
            // the right cosets of <x> = {(a,0,0)}; coset K(0,b,c) is point b·p + c.
            // (a',b',c') sends (b,c) to (b+b', c+c'-a'(b+b')).
            let p = *p;
            let act = move |a: u32, b: u32, c: u32| {
                perm_from_fn(p * p, move |pt| {
                    let (pb, pc) = (pt / p, pt % p);
                    let nb = (pb + b) % p;
                    let nc = (pc + c + p * p - (a * nb) % p) % p;
                    nb * p + nc
                })
            };
            let gens = vec![act(1, 0, 0), act(0, 1, 0), act(0, 0, 1)];
            finish((p * p) as usize, gens, cap)
        }
        GroupSpec::FrobeniusMetacyclic { q, d } => {
            let q = *q;
            let r = mod_pow(
                least_primitive_root(q) as u64,
                ((q - 1) / d) as u64,
                q as u64,
            ) as u32;
            finish(
                q as usize,
                vec![
                    perm_from_fn(q, |x| (x + 1) % q),
                    perm_from_fn(q, |x| ((x as u64 * r as u64) % q as u64) as u32),
                ],
                cap,
            )
        }
        GroupSpec::Direct { parts } => {
            let built: Vec<Realised> = parts
                .iter()
                .map(|p| realise(p, cap))
                .collect::<Result<_, _>>()?;
            let degree: usize = built.iter().map(|b| b.degree).sum();
            let mut gens = Vec::new();
            let mut before = 0;
            for b in &built {
                let left = Permutation::identity(before);
                let right = Permutation::identity(degree - before - b.degree);
                for g in &b.gens {
                    gens.push(left.direct_sum(g).direct_sum(&right));
                }
                before += b.degree;
            }
            finish(degree, gens, cap)
        }
        GroupSpec::Perm { degree, generators } => {
            let gens = generators
                .iter()
                .map(|cycles| Permutation::from_cycles(*degree as usize, cycles))
                .collect::<Result<Vec<_>, _>>()?;
            finish(*degree as usize, gens, cap)
        }
        GroupSpec::Semidirect {
            normal,
            complement,
            action,
        } => realise_semidirect(normal, complement, action, cap),
    }
}

/// Extends generator images to a map on all of `n`, checking that it is a
/// well-defined bijective homomorphism. Returns the images indexed by element.
fn extend_automorphism(n: &Realised, images: &[Permutation]) -> Result<Vec<usize>, SpecError> {
    let group = &n.group;
    let size = group.len();
    let mut phi: Vec<Option<usize>> = vec![None; size];
    let img_idx: Vec<usize> = images
        .iter()
        .map(|p| group.index_of(p).expect("word evaluates inside the group"))
        .collect();
    phi[0] = Some(0);
    let mut queue = vec![0usize];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        let fx = phi[x].expect("queued elements are assigned");
        for (g, &img) in n.gens.iter().zip(&img_idx) {
            let y = group.index_of(&group.element(x).mul(g)).expect("closed");
            let fy = group.mul_index(fx, img);
            match phi[y] {
                None => {
                    phi[y] = Some(fy);
                    queue.push(y);
                }
                Some(prev) if prev != fy => {
                    return Err(SpecError::ActionNotAutomorphism(
                        "generator images do not respect the relations of the normal part".into(),
                    ))
                }
                Some(_) => {}
            }
        }
    }
    let phi: Vec<usize> = phi
        .into_iter()
        .map(|x| x.expect("generators reach every element"))
        .collect();
    let mut hit = vec![false; size];
    for &y in &phi {
        hit[y] = true;
    }
    if hit.iter().any(|h| !h) {
        return Err(SpecError::ActionNotAutomorphism(
            "generator images do not define a bijection".into(),
        ));
    }
    Ok(phi)
}

fn realise_semidirect(
    normal: &GroupSpec,
    complement: &GroupSpec,
    action: &[Vec<Vec<u32>>],
    cap: usize,
) -> Result<Realised, SpecError> {
    let n = realise(normal, cap)?;
    let h = realise(complement, cap)?;
    if action.len() != h.gens.len() {
        return Err(SpecError::InvalidSpec(format!(
            "action lists {} complement generators, complement has {}",
            action.len(),
            h.gens.len()
        )));
    }
    let n_size = n.group.len();
    let degree = n_size + h.degree;
    let eval_word = |word: &[u32]| -> Result<Permutation, SpecError> {
        let mut acc = Permutation::identity(n.degree);
        for &i in word {
            let g = n.gens.get(i as usize).ok_or_else(|| {
                SpecError::InvalidSpec(format!("word refers to missing generator {i}"))
            })?;
            acc = acc.mul(g);
        }
        Ok(acc)
    };

    // Points 0..|N| are the elements of N (by index); the rest are the complement's points.
    let mut gens = Vec::new();
    for g in &n.gens {
        let mut images: Vec<u32> = (0..n_size)
            .map(|x| {
                n.group
                    .index_of(&n.group.element(x).mul(g))
                    .expect("closed") as u32
            })
            .collect();
        images.extend((0..h.degree as u32).map(|x| x + n_size as u32));
        gens.push(Permutation::from_images(images)?);
    }
    for (hg, words) in h.gens.iter().zip(action) {
        if words.len() != n.gens.len() {
            return Err(SpecError::InvalidSpec(format!(
                "action gives {} images, normal part has {} generators",
                words.len(),
                n.gens.len()
            )));
        }
        let images = words
            .iter()
            .map(|w| eval_word(w))
            .collect::<Result<Vec<_>, _>>()?;
        let phi = extend_automorphism(&n, &images)?;
        let mut img: Vec<u32> = phi.iter().map(|&y| y as u32).collect();
        img.extend(hg.images().iter().map(|&x| x + n_size as u32));
        gens.push(Permutation::from_images(img)?);
    }
    let built = finish(degree, gens, cap)?;
    let expected = n.group.order() * h.group.order();
    if built.group.order() != expected {
        return Err(SpecError::ActionNotAutomorphism(format!(
            "generated group has order {}, expected |N|·|H| = {expected}; the action is not a homomorphism",
            built.group.order()
        )));
    }
    Ok(built)
}

/// The verification corpus: a fixed, ordered list of named specs, each of
/// order at most 10 000.
pub fn builtin_corpus() -> Vec<(String, GroupSpec)> {
    use GroupSpec::*;
    let mut out: Vec<(String, GroupSpec)> = Vec::new();
    for n in 1..=50 {
        out.push((format!("C{n}"), Cyclic { n }));
    }
    for n in 1..=50 {
        out.push((format!("D{}", 2 * n), Dihedral { order: 2 * n }));
    }
    for n in 1..=5 {
        out.push((format!("S{n}"), Symmetric { n }));
    }
    for n in 3..=5 {
        out.push((format!("A{n}"), Alternating { n }));
    }
    for q in (3..=31).filter(|&q| is_prime(q as u64)) {
        for d in (2..q).filter(|d| (q - 1).is_multiple_of(d)) {
            out.push((format!("F{q}_{d}"), FrobeniusMetacyclic { q, d }));
        }
    }
    out.push(("E27".into(), ExtraspecialPlus { p: 3 }));
    out.push(("E125".into(), ExtraspecialPlus { p: 5 }));
    out.push(("ex31a".into(), GroupSpec::example_31a()));
    out.push(("ex31b".into(), GroupSpec::example_31b()));

    let named = |name: &str| -> GroupSpec {
        let (kind, rest) = name.split_at(1);
        match kind {
            "C" => Cyclic {
                n: rest.parse().unwrap(),
            },
            "D" => Dihedral {
                order: rest.parse().unwrap(),
            },
            "S" => Symmetric {
                n: rest.parse().unwrap(),
            },
            "A" => Alternating {
                n: rest.parse().unwrap(),
            },
            "E" => ExtraspecialPlus {
                p: if rest == "27" { 3 } else { 5 },
            },
            "F" => {
                let (q, d) = rest.split_once('_').unwrap();
                FrobeniusMetacyclic {
                    q: q.parse().unwrap(),
                    d: d.parse().unwrap(),
                }
            }
            _ => unreachable!("unknown corpus factor {name}"),
        }
    };
    const PRODUCTS: &[&[&str]] = &[
        &["C3", "S3"],
        &["S3", "C2"],
        &["S3", "C5"],
        &["S3", "S3"],
        &["D10", "C3"],
        &["D10", "S3"],
        &["F7_3", "C2"],
        &["F7_3", "C5"],
        &["F7_6", "C5"],
        &["F5_4", "C3"],
        &["F5_4", "F7_3"],
        &["D42", "C5"],
        &["A4", "C2"],
        &["A4", "C5"],
        &["S4", "C5"],
        &["A5", "C2"],
        &["A5", "S3"],
        &["S3", "F7_3"],
        &["F7_3", "F7_3"],
        &["F7_6", "F7_3"],
        &["F7_6", "F5_4"],
        &["F7_6", "D10"],
        &["F7_3", "F13_3"],
        &["S3", "E125"],
        &["D10", "E27"],
        &["F5_4", "E27"],
        &["F7_6", "E27"],
        &["D42", "E27"],
        &["F11_5", "E27"],
        &["F13_12", "E27"],
        &["F7_3", "E125"],
        &["F5_4", "E125"],
        &["A4", "E125"],
        &["E27", "E125"],
        &["F7_6", "S3", "C5"],
        &["S3", "S3", "E125"],
    ];
    for parts in PRODUCTS {
        let spec = Direct {
            parts: parts.iter().map(|p| named(p)).collect(),
        };
        debug_assert!(spec.expected_order().unwrap() <= 10_000);
        out.push((parts.join("x"), spec));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order_of(spec: GroupSpec) -> u64 {
        build(&spec).unwrap().order()
    }

    #[test]
    fn family_orders() {
        assert_eq!(order_of(GroupSpec::Cyclic { n: 1 }), 1);
        for n in 1..=12 {
            assert_eq!(order_of(GroupSpec::Cyclic { n }), n as u64);
            assert_eq!(order_of(GroupSpec::Dihedral { order: 2 * n }), 2 * n as u64);
        }
        for (n, f) in [(1, 1), (2, 2), (3, 6), (4, 24), (5, 120)] {
            assert_eq!(order_of(GroupSpec::Symmetric { n }), f);
            assert_eq!(order_of(GroupSpec::Alternating { n }), f.div_ceil(2).max(1));
        }
    }

    #[test]
    fn extraspecial_is_exponent_p_with_center_p() {
        for p in [3u32, 5] {
            let g = build(&GroupSpec::ExtraspecialPlus { p }).unwrap();
            assert_eq!(g.order(), (p as u64).pow(3));
            assert_eq!(g.degree(), (p * p) as usize);
            assert_eq!(g.center().order(), p as u64);
            assert!(g.elements().skip(1).all(|x| x.order() == p as u64));
        }
    }

    #[test]
    fn metacyclic_frobenius_matches_primitive_root() {
        assert_eq!(least_primitive_root(7), 3);
        let g = build(&GroupSpec::FrobeniusMetacyclic { q: 7, d: 6 }).unwrap();
        assert_eq!(g.order(), 42);
        assert_eq!(g.center().order(), 1);
        let m = &g.generators()[1];
        assert_eq!(m.image(1), 3);
    }

    #[test]
    fn witness_groups() {
        let a = build(&GroupSpec::example_31a()).unwrap();
        assert_eq!(a.order(), 5250);
        assert_eq!(a.center().order(), 5);
        assert_eq!(a.degree(), 32);
        let b = build(&GroupSpec::example_31b()).unwrap();
        assert_eq!(b.order(), 5250);
        assert_eq!(b.center().order(), 5);
    }

    #[test]
    fn parse_examples() {
        assert_eq!(
            parse_spec(r#"{"kind":"cyclic","n":6}"#).unwrap(),
            GroupSpec::Cyclic { n: 6 }
        );
        let b = parse_spec(
            r#"{"kind":"direct","parts":[{"kind":"dihedral","order":42},{"kind":"extraspecial_plus","p":5}]}"#,
        )
        .unwrap();
        assert_eq!(b, GroupSpec::example_31b());
        let s3 =
            parse_spec(r#"{"kind":"perm","degree":3,"generators":[[[0,1]],[[0,1,2]]]}"#).unwrap();
        assert_eq!(build(&s3).unwrap().order(), 6);
    }

    #[test]
    fn parse_errors_carry_position() {
        match parse_spec("{\"kind\":\"cyclic\",\n \"n\": }") {
            Err(SpecError::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_spec(r#"{"kind":"cyclic","m":6}"#),
            Err(SpecError::Parse { .. })
        ));
        assert!(matches!(
            parse_spec(r#"{"kind":"frobenius_metacyclic","q":7,"d":4}"#),
            Err(SpecError::InvalidSpec(_))
        ));
        assert!(matches!(
            parse_spec(r#"{"kind":"extraspecial_plus","p":2}"#),
            Err(SpecError::InvalidSpec(_))
        ));
        assert!(matches!(
            parse_spec(r#"{"kind":"dihedral","order":7}"#),
            Err(SpecError::InvalidSpec(_))
        ));
    }

    #[test]
    fn semidirect_rebuilds_f21() {
        // C7 ⋊ C3 with the generator of C3 acting as x -> x^2.
        let spec = GroupSpec::Semidirect {
            normal: Box::new(GroupSpec::Cyclic { n: 7 }),
            complement: Box::new(GroupSpec::Cyclic { n: 3 }),
            action: vec![vec![vec![0, 0]]],
        };
        let g = build(&spec).unwrap();
        assert_eq!(g.order(), 21);
        assert_eq!(g.center().order(), 1);
    }

    #[test]
    fn semidirect_rejects_bad_actions() {
        // x -> x^2 is not a bijection on C4
        let not_bijective = GroupSpec::Semidirect {
            normal: Box::new(GroupSpec::Cyclic { n: 4 }),
            complement: Box::new(GroupSpec::Cyclic { n: 2 }),
            action: vec![vec![vec![0, 0]]],
        };
        assert!(matches!(
            build(&not_bijective),
            Err(SpecError::ActionNotAutomorphism(_))
        ));
        // x -> x^2 on C7 has order 3, so C2 cannot act that way
        let not_hom = GroupSpec::Semidirect {
            normal: Box::new(GroupSpec::Cyclic { n: 7 }),
            complement: Box::new(GroupSpec::Cyclic { n: 2 }),
            action: vec![vec![vec![0, 0]]],
        };
        assert!(matches!(
            build(&not_hom),
            Err(SpecError::ActionNotAutomorphism(_))
        ));
        // swapping the generators of C2 x C4 is not well defined
        let not_well_defined = GroupSpec::Semidirect {
            normal: Box::new(GroupSpec::Direct {
                parts: vec![GroupSpec::Cyclic { n: 2 }, GroupSpec::Cyclic { n: 4 }],
            }),
            complement: Box::new(GroupSpec::Cyclic { n: 2 }),
            action: vec![vec![vec![1], vec![0]]],
        };
        assert!(matches!(
            build(&not_well_defined),
            Err(SpecError::ActionNotAutomorphism(_))
        ));
    }

    #[test]
    fn cap_exceeded_surfaces() {
        assert!(matches!(
            build_with_cap(&GroupSpec::Symmetric { n: 5 }, 50),
            Err(SpecError::Group(GroupError::CapExceeded { .. }))
        ));
    }

    #[test]
    fn corpus_is_deterministic_and_bounded() {
        let corpus = builtin_corpus();
        assert_eq!(corpus, builtin_corpus());
        let names: std::collections::BTreeSet<_> = corpus.iter().map(|(n, _)| n.clone()).collect();
        assert_eq!(names.len(), corpus.len());
        let lookup = |name: &str| corpus.iter().find(|(n, _)| n == name).unwrap().1.clone();
        assert_eq!(lookup("ex31a"), GroupSpec::example_31a());
        assert_eq!(lookup("ex31b"), GroupSpec::example_31b());
        for (name, spec) in &corpus {
            let order = spec.expected_order().unwrap();
            assert!(order <= 10_000, "{name} has order {order}");
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn leaf() -> impl Strategy<Value = GroupSpec> {
            prop_oneof![
                (1u32..60).prop_map(|n| GroupSpec::Cyclic { n }),
                (1u32..30).prop_map(|n| GroupSpec::Dihedral { order: 2 * n }),
                (1u32..6).prop_map(|n| GroupSpec::Symmetric { n }),
                (1u32..6).prop_map(|n| GroupSpec::Alternating { n }),
                prop_oneof![Just(3u32), Just(5), Just(7)]
                    .prop_map(|p| GroupSpec::ExtraspecialPlus { p }),
                prop_oneof![
                    Just((7u32, 6u32)),
                    Just((7, 3)),
                    Just((5, 4)),
                    Just((13, 4))
                ]
                .prop_map(|(q, d)| GroupSpec::FrobeniusMetacyclic { q, d }),
                (2u32..6).prop_map(|degree| GroupSpec::Perm {
                    degree,
                    generators: vec![vec![vec![0, 1]], vec![(0..degree).collect()]],
                }),
            ]
        }

        fn spec() -> impl Strategy<Value = GroupSpec> {
            leaf().prop_recursive(3, 12, 3, |inner| {
                prop_oneof![
                    prop::collection::vec(inner.clone(), 1..3)
                        .prop_map(|parts| GroupSpec::Direct { parts }),
                    (inner.clone(), inner).prop_map(|(n, h)| GroupSpec::Semidirect {
                        normal: Box::new(n),
                        complement: Box::new(h),
                        action: vec![vec![vec![0]]],
                    }),
                ]
            })
        }

        proptest! {
            #[test]
            fn json_round_trip(s in spec()) {
                let text = s.to_json();
                let back: GroupSpec = serde_json::from_str(&text).unwrap();
                prop_assert_eq!(back, s);
            }

            #[test]
            fn built_order_matches_parameters(s in leaf()) {
                let g = build(&s).unwrap();
                if let Some(order) = s.expected_order() {
                    prop_assert_eq!(g.order(), order);
                }
            }
        }
    }
}
