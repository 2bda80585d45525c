use crate::category::{as_function, is_deterministic};
use crate::constructors::{from_deterministic_pair, from_function};
use crate::correlation::{Correlation, DeterministicPair};
use crate::error::{Error, Result};

use super::{check_membership, CategoryTag};

fn is_injective(map: &[usize]) -> bool {
    let mut seen = map.to_vec();
    seen.sort_unstable();
    seen.windows(2).all(|w| w[0] != w[1])
}

fn covers(map: &[usize], target: usize) -> bool {
    let mut hit = vec![false; target];
    for &v in map {
        hit[v] = true;
    }
    hit.into_iter().all(|h| h)
}

/// Deterministic pair satisfying the synchronous section criterion.
fn section_pair(p: &Correlation) -> Option<DeterministicPair> {
    let pair = is_deterministic(p)?;
    let nx = p.input_set().size();
    let injective = is_injective(&pair.pair_map());
    let diagonal_exact = (0..nx).all(|xa| {
        (0..nx).all(|xb| {
            let (ya, yb) = pair.apply(xa, xb);
            (ya == yb) == (xa == xb)
        })
    });
    (injective && diagonal_exact).then_some(pair)
}

/// Deterministic pair satisfying the synchronous retraction criterion.
fn retraction_pair(p: &Correlation) -> Option<DeterministicPair> {
    let pair = is_deterministic(p)?;
    let (nx, ny) = (p.input_set().size(), p.output_set().size());
    let onto = covers(&pair.pair_map(), ny * ny);
    let diagonal = (0..nx).all(|x| {
        let (ya, yb) = pair.apply(x, x);
        ya == yb
    });
    let diagonal_onto = (0..ny).all(|y| (0..nx).any(|x| pair.apply(x, x) == (y, y)));
    (onto && diagonal && diagonal_onto).then_some(pair)
}

fn injective_function(p: &Correlation) -> Option<Vec<usize>> {
    as_function(p).filter(|f| is_injective(f))
}

fn onto_function(p: &Correlation) -> Option<Vec<usize>> {
    as_function(p).filter(|f| covers(f, p.output_set().size()))
}

/// Left invertible in `cat`.
pub fn is_section(p: &Correlation, cat: CategoryTag) -> Result<bool> {
    check_membership(p, cat)?;
    Ok(match cat {
        CategoryTag::S => section_pair(p).is_some(),
        _ => injective_function(p).is_some(),
    })
}

/// Right invertible in `cat`.
pub fn is_retraction(p: &Correlation, cat: CategoryTag) -> Result<bool> {
    check_membership(p, cat)?;
    Ok(match cat {
        CategoryTag::S => retraction_pair(p).is_some(),
        _ => onto_function(p).is_some(),
    })
}

/// Section and retraction. In `NS`, `Q`, `HV` this is a bijective function.
pub fn is_isomorphism(p: &Correlation, cat: CategoryTag) -> Result<bool> {
    Ok(is_section(p, cat)? && is_retraction(p, cat)?)
}

/// Synchronous `q` with `q ∘ p = id_X`: `G = F⁻¹` on the image of `F`, `(x̂, x̂)` elsewhere, `x̂` the first label.
pub fn section_left_inverse(p: &Correlation) -> Result<Correlation> {
    let pair = section_pair(p).filter(|_| crate::category::is_synchronous(p)).ok_or(Error::NotASection)?;
    let (x, y) = (p.input_set(), p.output_set());
    let mut preimage = vec![None; y.squared_size()];
    for (c, r) in pair.pair_map().into_iter().enumerate() {
        preimage[r] = Some(x.pair_of(c));
    }
    let g = DeterministicPair::from_fn(y.clone(), x.clone(), |ya, yb| {
        preimage[y.pair_index(ya, yb)].unwrap_or((0, 0))
    })?;
    from_deterministic_pair(&g)
}

/// Left inverse inside `cat`; for `NS`, `Q`, `HV` a function `g` with `g ∘ f = id`, sending unmatched points to `x̂`.
pub fn section_left_inverse_in(p: &Correlation, cat: CategoryTag) -> Result<Correlation> {
    if cat == CategoryTag::S {
        check_membership(p, cat)?;
        return section_left_inverse(p);
    }
    if !is_section(p, cat)? {
        return Err(Error::NotASection);
    }
    let f = as_function(p).expect("sections here are functions");
    let mut g = vec![0; p.output_set().size()];
    for (x, &y) in f.iter().enumerate() {
        g[y] = x;
    }
    from_function(p.output_set(), p.input_set(), &g)
}

/// Synchronous `q` with `p ∘ q = id_Y`: the first preimage of each pair, a diagonal one for diagonal pairs.
pub fn retraction_right_inverse(p: &Correlation) -> Result<Correlation> {
    let pair = retraction_pair(p).ok_or(Error::NotARetraction)?;
    let (x, y) = (p.input_set(), p.output_set());
    let map = pair.pair_map();
    let g = DeterministicPair::from_fn(y.clone(), x.clone(), |ya, yb| {
        let target = y.pair_index(ya, yb);
        let c = if ya == yb {
            let d = (0..x.size()).find(|&d| map[x.pair_index(d, d)] == target).expect("diagonal preimage");
            x.pair_index(d, d)
        } else {
            (0..map.len()).find(|&c| map[c] == target).expect("onto")
        };
        x.pair_of(c)
    })?;
    from_deterministic_pair(&g)
}

/// Right inverse inside `cat`; for `NS`, `Q`, `HV` the function sending each `y` to its first preimage.
pub fn retraction_right_inverse_in(p: &Correlation, cat: CategoryTag) -> Result<Correlation> {
    if cat == CategoryTag::S {
        check_membership(p, cat)?;
        return retraction_right_inverse(p);
    }
    if !is_retraction(p, cat)? {
        return Err(Error::NotARetraction);
    }
    let f = as_function(p).expect("retractions here are functions");
    let g: Vec<usize> = (0..p.output_set().size())
        .map(|y| f.iter().position(|&v| v == y).expect("onto"))
        .collect();
    from_function(p.output_set(), p.input_set(), &g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::compose;
    use crate::rational::{int, rat};
    use crate::set::FiniteSet;

    fn bin() -> FiniteSet {
        FiniteSet::binary()
    }

    fn cross_pair() -> Correlation {
        let f = DeterministicPair::from_fn(bin(), FiniteSet::range(4), |xa, xb| match (xa, xb) {
            (0, 0) => (0, 0),
            (1, 1) => (1, 1),
            (0, 1) => (2, 3),
            _ => (3, 2),
        })
        .unwrap();
        from_deterministic_pair(&f).unwrap()
    }

    #[test]
    fn inclusion_is_a_section_everywhere() {
        let p = from_function(&bin(), &FiniteSet::range(3), &[0, 1]).unwrap();
        for cat in CategoryTag::ALL {
            assert!(is_section(&p, cat).unwrap());
            let q = section_left_inverse_in(&p, cat).unwrap();
            assert_eq!(compose(&q, &p).unwrap(), Correlation::identity(&bin()));
        }
        let q = section_left_inverse(&p).unwrap();
        // Unmatched pairs such as (2, 1) go to (x̂, x̂) = (0, 0).
        assert_eq!(q.at(0, 0, 2, 1), &int(1));
        assert_eq!(q.at(1, 1, 2, 2), &int(0));
    }

    #[test]
    fn cross_dependent_pair() {
        let p = cross_pair();
        assert!(is_section(&p, CategoryTag::S).unwrap());
        assert_eq!(is_section(&p, CategoryTag::NS), Err(Error::NotInCategory("NS".into())));
        let q = section_left_inverse(&p).unwrap();
        assert_eq!(compose(&q, &p).unwrap(), Correlation::identity(&bin()));
        assert!(crate::category::is_synchronous(&q));
    }

    #[test]
    fn non_deterministic_is_not_a_section() {
        let p = Correlation::from_columns(bin(), bin(), |_, _| vec![rat(1, 2), int(0), int(0), rat(1, 2)]).unwrap();
        assert!(!is_section(&p, CategoryTag::S).unwrap());
        assert_eq!(section_left_inverse(&p), Err(Error::NotASection));
    }

    #[test]
    fn onto_function_retraction() {
        let p = from_function(&FiniteSet::range(3), &bin(), &[0, 1, 1]).unwrap();
        for cat in CategoryTag::ALL {
            assert!(is_retraction(&p, cat).unwrap());
            let q = retraction_right_inverse_in(&p, cat).unwrap();
            assert_eq!(compose(&p, &q).unwrap(), Correlation::identity(&bin()));
        }
        let q = retraction_right_inverse_in(&p, CategoryTag::HV).unwrap();
        assert_eq!(q, from_function(&bin(), &FiniteSet::range(3), &[0, 1]).unwrap());
        let not_onto = from_function(&FiniteSet::range(3), &bin(), &[1, 1, 1]).unwrap();
        assert!(!is_retraction(&not_onto, CategoryTag::S).unwrap());
        assert_eq!(retraction_right_inverse(&not_onto), Err(Error::NotARetraction));
    }

    #[test]
    fn identity_and_swap() {
        let id = Correlation::identity(&bin());
        assert!(is_retraction(&id, CategoryTag::S).unwrap());
        assert_eq!(retraction_right_inverse(&id).unwrap(), id);
        for cat in CategoryTag::ALL {
            assert!(is_isomorphism(&id, cat).unwrap());
        }
        let swap = DeterministicPair::from_fn(bin(), bin(), |a, b| if a == b { (a, b) } else { (b, a) }).unwrap();
        let swap = from_deterministic_pair(&swap).unwrap();
        assert!(is_isomorphism(&swap, CategoryTag::S).unwrap());
        assert_eq!(is_isomorphism(&swap, CategoryTag::NS), Err(Error::NotInCategory("NS".into())));
    }
}
