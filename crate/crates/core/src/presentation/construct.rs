use super::{
    normal_right_anchor, Connector, Endpoint, Family, Mode, OrbitKind, PTuple, PeriodicOrbit,
    SystemPresentation, Word,
};

fn word<S: ToString>(symbols: impl IntoIterator<Item = S>) -> Word {
    symbols.into_iter().map(|s| s.to_string()).collect()
}

fn limit(id: &str, w: Word) -> PeriodicOrbit {
    PeriodicOrbit {
        id: id.to_string(),
        length: w.len(),
        kind: OrbitKind::Limit,
        word: Some(w),
    }
}

/// The connector `w_left^{-∞}·middle·w_right^∞`, whose base point sits at
/// the start of `middle`.
fn shift_connector(id: &str, left: &PeriodicOrbit, right: &PeriodicOrbit, middle: Word) -> Connector {
    let r = right.length;
    let raw = (r - middle.len() % r) % r;
    Connector {
        id: id.to_string(),
        left: Endpoint {
            orbit: left.id.clone(),
            anchor: 0,
        },
        right: Endpoint {
            orbit: right.id.clone(),
            anchor: normal_right_anchor(left.length, 0, r, raw),
        },
        middle: Some(middle),
    }
}

/// The cycle `C_{2q+3}` as the shift orbit of `(0 1 ⋯ 2q+2)^ℤ`.
pub fn make_odd_cycle(q: usize) -> SystemPresentation {
    let n = 2 * q + 3;
    let mut s = SystemPresentation::empty(Mode::Subshift);
    s.orbits.push(PeriodicOrbit {
        id: "y0".into(),
        length: n,
        kind: OrbitKind::Isolated,
        word: Some(word(0..n)),
    });
    s
}

/// A fixed point with a sequence of two-point orbits converging to it.
pub fn make_x1() -> SystemPresentation {
    let mut s = SystemPresentation::empty(Mode::Homeomorphism);
    s.orbits.push(PeriodicOrbit {
        id: "y0".into(),
        length: 1,
        kind: OrbitKind::Limit,
        word: None,
    });
    s.families.push(Family {
        id: "x".into(),
        size: 2,
        limit: "y0".into(),
    });
    s
}

/// `0^ℤ` with a connector back to itself (n = 0), to a second fixed point
/// (n = 1), or to the cycle `(1 ⋯ n)^ℤ` (n even). Odd `n ≥ 3` is the odd cycle.
pub fn make_n_sigma(n: usize) -> SystemPresentation {
    if n >= 3 && n % 2 == 1 {
        return make_odd_cycle((n - 3) / 2);
    }
    let mut s = SystemPresentation::empty(Mode::Subshift);
    let zero = limit("y0", word(["0"]));
    let connector = match n {
        0 => shift_connector("z", &zero, &zero, word(["1"])),
        1 => {
            let one = limit("y1", word(["1"]));
            let c = shift_connector("z", &zero, &one, Vec::new());
            s.orbits.push(one);
            c
        }
        _ => {
            let cycle = limit("y1", word(1..=n));
            let c = shift_connector("z", &zero, &cycle, Vec::new());
            s.orbits.push(cycle);
            c
        }
    };
    s.orbits.insert(0, zero);
    s.connectors.push(connector);
    s
}

/// `Σ_p`: cycles `w_i = a^i_0 ⋯ a^i_{λ_i−1}`, connectors
/// `w_{i+ε_i}^{-∞}·w_{i+1−ε_i}^∞` for `i < l` and `w_l^{-∞}·b_0⋯b_{m−1}w_0^∞`.
pub fn make_sigma_p(p: &PTuple) -> SystemPresentation {
    let mut s = SystemPresentation::empty(Mode::Subshift);
    for (i, &len) in p.lambdas().iter().enumerate() {
        let w = (0..len).map(|j| format!("a^{i}_{j}")).collect();
        s.orbits.push(limit(&format!("y{i}"), w));
    }
    for (i, &e) in p.epsilons().iter().enumerate() {
        let e = e as usize;
        let c = shift_connector(&format!("z{i}"), &s.orbits[i + e], &s.orbits[i + 1 - e], Vec::new());
        s.connectors.push(c);
    }
    let l = p.l();
    let middle = (0..p.m()).map(|j| format!("b_{j}")).collect();
    let closing = shift_connector(&format!("z{l}"), &s.orbits[l], &s.orbits[0], middle);
    s.connectors.push(closing);
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::validate;

    #[test]
    fn odd_cycle_words() {
        let s = make_odd_cycle(0);
        assert_eq!(s.orbits.len(), 1);
        assert_eq!(s.orbits[0].length, 3);
        assert_eq!(s.orbits[0].word.as_ref().unwrap().concat(), "012");
        assert_eq!(make_odd_cycle(1).orbits[0].length, 5);
        assert!(s.connectors.is_empty());
    }

    #[test]
    fn n_sigma_shapes() {
        let s0 = make_n_sigma(0);
        assert_eq!(s0.orbits.len(), 1);
        assert_eq!(s0.orbits[0].word.as_ref().unwrap().concat(), "0");
        assert_eq!(s0.connectors[0].left.orbit, s0.connectors[0].right.orbit);
        assert_eq!(s0.connectors[0].middle.as_ref().unwrap().concat(), "1");

        let s1 = make_n_sigma(1);
        assert_eq!(s1.orbits.iter().map(|o| o.length).collect::<Vec<_>>(), vec![1, 1]);
        assert_ne!(s1.connectors[0].left.orbit, s1.connectors[0].right.orbit);

        let s2 = make_n_sigma(2);
        let words: Vec<String> = s2.orbits.iter().map(|o| o.word.as_ref().unwrap().concat()).collect();
        assert_eq!(words, vec!["0", "12"]);
        assert_eq!(s2.connectors.len(), 1);
        assert_eq!(make_n_sigma(3), make_odd_cycle(0));
    }

    #[test]
    fn n_sigma_odd_delegates_for_all_small_q() {
        for q in 0..=10 {
            assert_eq!(make_n_sigma(2 * q + 3), make_odd_cycle(q));
        }
    }

    #[test]
    fn sigma_p_small_cases() {
        let s = make_sigma_p(&PTuple::new(vec![2], 1, vec![]).unwrap());
        assert_eq!(s.orbits.len(), 1);
        assert_eq!(s.connectors.len(), 1);
        assert_eq!(s.connectors[0].middle.as_ref().unwrap().len(), 1);
        assert_eq!(s.connectors[0].right.anchor, 1);

        let s = make_sigma_p(&PTuple::new(vec![2, 2], 1, vec![0]).unwrap());
        assert_eq!(s.orbits.len(), 2);
        assert_eq!(s.connectors.len(), 2);
        assert_eq!(s.connectors[0].left.orbit, "y0");
        assert_eq!(s.connectors[0].right.orbit, "y1");
        assert_eq!(s.connectors[1].left.orbit, "y1");
        assert_eq!(s.connectors[1].right.orbit, "y0");
    }

    /// Reads the limit phases off the actual sequences and compares them
    /// with the stored anchors.
    fn check_anchors_against_sequences(s: &SystemPresentation) {
        for (ci, c) in s.connectors.iter().enumerate() {
            let l = s.orbit_index(&c.left.orbit).unwrap();
            let r = s.orbit_index(&c.right.orbit).unwrap();
            let (ll, rl) = (s.orbits[l].length as i64, s.orbits[r].length as i64);
            let matches = |orbit: usize, k: i64, phase: i64| {
                (-6..=6).all(|i| s.connector_symbol(ci, k, i) == s.orbit_symbol(orbit, phase, i))
            };
            let q = 20;
            let left_phase = (0..ll).find(|&a| matches(l, -q * ll, a)).expect("left tail converges");
            let right_phase = (0..rl).find(|&a| matches(r, q * rl, a)).expect("right tail converges");
            let got = normal_right_anchor(ll as usize, left_phase as usize, rl as usize, right_phase as usize);
            assert_eq!(got, c.right.anchor, "connector {}", c.id);
            assert_eq!(c.left.anchor, 0);
        }
    }

    #[test]
    fn anchors_match_the_sequences() {
        for n in [0, 1, 2, 4, 6] {
            check_anchors_against_sequences(&make_n_sigma(n));
        }
        for (lambdas, m, eps) in [
            (vec![2], 1, vec![]),
            (vec![4], 3, vec![]),
            (vec![2, 4], 1, vec![0]),
            (vec![4, 2], 3, vec![1]),
            (vec![6, 4, 2], 5, vec![1, 0]),
        ] {
            check_anchors_against_sequences(&make_sigma_p(&PTuple::new(lambdas, m, eps).unwrap()));
        }
    }

    #[test]
    fn constructors_validate() {
        assert!(validate(&make_x1()).is_ok());
        for q in 0..6 {
            assert!(validate(&make_odd_cycle(q)).is_ok());
        }
        for n in 0..12 {
            assert!(validate(&make_n_sigma(n)).is_ok(), "n = {n}");
        }
    }
}
