//! Buchberger's algorithm with the Gebauer–Möller criteria, over any
//! [`Field`], for global orders and for a local degree order inside the
//! truncated algebra `k[x]/m^N`.

use std::collections::BTreeMap;

use super::MonomialOrder;
use crate::field::Field;
use crate::poly::{Monomial, Polynomial, Vars, MAX_VARS};

pub(crate) const KEY_LEN: usize = 2 * MAX_VARS + 2;

/// Sort key whose lexicographic order equals the monomial order.
pub(crate) type Key = [u16; KEY_LEN];

#[derive(Clone, Debug)]
pub(crate) enum OrderKind {
    Global(MonomialOrder),
    /// Lowest total degree first, ties broken by degrevlex. Only a
    /// well-order on the finitely many monomials below the truncation.
    LocalDegRevLex,
}

#[derive(Clone, Debug)]
pub(crate) struct Ordering {
    kind: OrderKind,
    nvars: usize,
    front: Vec<usize>,
    back: Vec<usize>,
}

impl Ordering {
    pub(crate) fn new(kind: OrderKind, nvars: usize) -> Self {
        let (front, back) = match &kind {
            OrderKind::Global(MonomialOrder::BlockElimination { front }) => {
                let mut f = front.clone();
                f.sort_unstable();
                f.dedup();
                let b = (0..nvars).filter(|i| !f.contains(i)).collect();
                (f, b)
            }
            _ => (Vec::new(), (0..nvars).collect()),
        };
        Ordering {
            kind,
            nvars,
            front,
            back,
        }
    }

    pub(crate) fn key(&self, m: &Monomial) -> Key {
        let mut k = [0u16; KEY_LEN];
        match &self.kind {
            OrderKind::Global(MonomialOrder::Lex) => {
                k[..self.nvars].copy_from_slice(&m.0[..self.nvars]);
            }
            OrderKind::Global(MonomialOrder::DegRevLex) => {
                k[0] = m.degree() as u16;
                for (slot, i) in (0..self.nvars).rev().enumerate() {
                    k[1 + slot] = !m.0[i];
                }
            }
            OrderKind::Global(MonomialOrder::BlockElimination { .. }) => {
                let mut pos = 0;
                for block in [&self.front, &self.back] {
                    k[pos] = block.iter().map(|&i| m.0[i]).sum();
                    pos += 1;
                    for &i in block.iter().rev() {
                        k[pos] = !m.0[i];
                        pos += 1;
                    }
                }
            }
            OrderKind::LocalDegRevLex => {
                k[0] = !(m.degree() as u16);
                for (slot, i) in (0..self.nvars).rev().enumerate() {
                    k[1 + slot] = !m.0[i];
                }
            }
        }
        k
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Term<F> {
    pub key: Key,
    pub mono: Monomial,
    pub coeff: F,
}

/// Polynomial as terms sorted by decreasing key; first term leads.
pub(crate) type Poly<F> = Vec<Term<F>>;

pub(crate) struct Engine<'a> {
    pub ord: &'a Ordering,
    /// Terms of total degree `>= trunc` are discarded.
    pub trunc: Option<u32>,
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    deg: u32,
    key: Key,
}

impl Engine<'_> {
    #[inline]
    fn keep(&self, m: &Monomial) -> bool {
        self.trunc.is_none_or(|n| m.degree() < n)
    }

    pub(crate) fn to_internal<F: Field>(&self, p: &Polynomial<F>) -> Poly<F> {
        let mut v: Poly<F> = p
            .terms()
            .filter(|(m, _)| self.keep(m))
            .map(|(m, c)| Term {
                key: self.ord.key(m),
                mono: *m,
                coeff: c.clone(),
            })
            .collect();
        v.sort_by(|a, b| b.key.cmp(&a.key));
        v
    }

    pub(crate) fn to_external<F: Field>(&self, p: &Poly<F>, vars: &Vars) -> Polynomial<F> {
        Polynomial::from_terms(vars, p.iter().map(|t| (t.mono, t.coeff.clone())))
    }

    fn monic<F: Field>(p: &mut Poly<F>) {
        if let Some(lc) = p.first().map(|t| t.coeff.clone()) {
            if !lc.is_one() {
                let inv = lc.inv();
                for t in p.iter_mut() {
                    t.coeff = t.coeff.mul(&inv);
                }
            }
        }
    }

    fn add_scaled<F: Field>(
        &self,
        work: &mut BTreeMap<Key, (Monomial, F)>,
        g: &[Term<F>],
        shift: &Monomial,
        c: &F,
    ) {
        for t in g {
            let m = t.mono.mul(shift);
            if !self.keep(&m) {
                continue;
            }
            let k = self.ord.key(&m);
            let add = t.coeff.mul(c);
            match work.entry(k) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert((m, add));
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let s = e.get().1.add(&add);
                    if s.is_zero() {
                        e.remove();
                    } else {
                        e.get_mut().1 = s;
                    }
                }
            }
        }
    }

    /// Reduces the polynomial held in `work` by the reducers. With `full`
    /// every term is reduced, otherwise only until the leading term is
    /// irreducible.
    fn reduce_work<F: Field>(
        &self,
        mut work: BTreeMap<Key, (Monomial, F)>,
        reducers: &[&Poly<F>],
        full: bool,
    ) -> Poly<F> {
        let mut rem: Poly<F> = Vec::new();
        while let Some((k, (m, c))) = work.pop_last() {
            let red = reducers.iter().find(|g| g[0].mono.divides(&m));
            match red {
                Some(g) => {
                    let shift = g[0].mono.quotient_of(&m);
                    let factor = c.div(&g[0].coeff).neg();
                    self.add_scaled(&mut work, &g[1..], &shift, &factor);
                }
                None => {
                    rem.push(Term {
                        key: k,
                        mono: m,
                        coeff: c,
                    });
                    if !full {
                        while let Some((k, (m, c))) = work.pop_last() {
                            rem.push(Term {
                                key: k,
                                mono: m,
                                coeff: c,
                            });
                        }
                        break;
                    }
                }
            }
        }
        rem
    }

    pub(crate) fn reduce<F: Field>(&self, p: &Poly<F>, reducers: &[&Poly<F>], full: bool) -> Poly<F> {
        let work: BTreeMap<Key, (Monomial, F)> =
            p.iter().map(|t| (t.key, (t.mono, t.coeff.clone()))).collect();
        self.reduce_work(work, reducers, full)
    }

    fn spoly_work<F: Field>(&self, f: &Poly<F>, g: &Poly<F>, lcm: &Monomial) -> BTreeMap<Key, (Monomial, F)> {
        let mut work = BTreeMap::new();
        let sf = f[0].mono.quotient_of(lcm);
        let sg = g[0].mono.quotient_of(lcm);
        let cf = f[0].coeff.inv();
        let cg = g[0].coeff.inv().neg();
        self.add_scaled(&mut work, &f[1..], &sf, &cf);
        self.add_scaled(&mut work, &g[1..], &sg, &cg);
        work
    }

    fn make_pair<F: Field>(&self, basis: &[Poly<F>], i: usize, j: usize) -> Pair {
        let lcm = basis[i][0].mono.lcm(&basis[j][0].mono);
        Pair {
            i,
            j,
            lcm,
            deg: lcm.degree(),
            key: self.ord.key(&lcm),
        }
    }

    /// Gebauer–Möller installation of the new element `h`.
    fn update<F: Field>(&self, basis: &[Poly<F>], active: &mut [bool], pairs: &mut Vec<Pair>, h: usize) {
        let lh = basis[h][0].mono;
        let mut c: Vec<Pair> = (0..h)
            .filter(|&g| active[g])
            .map(|g| self.make_pair(basis, h, g))
            .collect();
        let mut d: Vec<Pair> = Vec::new();
        while let Some(p) = c.pop() {
            let lg = basis[p.j][0].mono;
            let coprime = lh.coprime(&lg);
            let dominated = c.iter().chain(d.iter()).any(|q| q.lcm.divides(&p.lcm));
            if coprime || !dominated {
                d.push(p);
            }
        }
        pairs.retain(|p| {
            !(lh.divides(&p.lcm)
                && lh.lcm(&basis[p.i][0].mono) != p.lcm
                && lh.lcm(&basis[p.j][0].mono) != p.lcm)
        });
        for p in d {
            let lg = basis[p.j][0].mono;
            if lh.coprime(&lg) {
                continue;
            }
            if self.trunc.is_some_and(|n| p.deg >= n) {
                continue;
            }
            pairs.push(p);
        }
        for g in 0..h {
            if active[g] && lh.divides(&basis[g][0].mono) {
                active[g] = false;
            }
        }
        active[h] = true;
    }

    /// Reduced Gröbner basis (standard basis in the truncated local case)
    /// of the ideal generated by `gens`. Elements are monic and sorted by
    /// decreasing leading monomial.
    pub(crate) fn groebner<F: Field>(&self, gens: &[Poly<F>]) -> Vec<Poly<F>> {
        let mut basis: Vec<Poly<F>> = Vec::new();
        let mut active: Vec<bool> = Vec::new();
        let mut pairs: Vec<Pair> = Vec::new();

        let mut input: Vec<Poly<F>> = gens.iter().filter(|g| !g.is_empty()).cloned().collect();
        // lower leading terms first gives smaller intermediate bases
        input.sort_by(|a, b| a[0].key.cmp(&b[0].key));
        for g in input {
            let reducers: Vec<&Poly<F>> = basis
                .iter()
                .zip(active.iter())
                .filter(|(_, a)| **a)
                .map(|(p, _)| p)
                .collect();
            let mut r = self.reduce(&g, &reducers, false);
            if r.is_empty() {
                continue;
            }
            Self::monic(&mut r);
            basis.push(r);
            active.push(false);
            let h = basis.len() - 1;
            self.update(&basis, &mut active, &mut pairs, h);
        }

        while !pairs.is_empty() {
            let (idx, _) = pairs
                .iter()
                .enumerate()
                .min_by(|a, b| a.1.deg.cmp(&b.1.deg).then(a.1.key.cmp(&b.1.key)))
                .expect("nonempty");
            let p = pairs.swap_remove(idx);
            let work = self.spoly_work(&basis[p.i], &basis[p.j], &p.lcm);
            let reducers: Vec<&Poly<F>> = basis
                .iter()
                .zip(active.iter())
                .filter(|(_, a)| **a)
                .map(|(p, _)| p)
                .collect();
            let mut r = self.reduce_work(work, &reducers, false);
            if r.is_empty() {
                continue;
            }
            Self::monic(&mut r);
            let unit = r[0].mono.is_one();
            basis.push(r);
            active.push(false);
            let h = basis.len() - 1;
            self.update(&basis, &mut active, &mut pairs, h);
            if unit {
                pairs.clear();
                break;
            }
        }

        let mut minimal: Vec<Poly<F>> = basis
            .into_iter()
            .zip(active)
            .filter(|(_, a)| *a)
            .map(|(p, _)| p)
            .collect();
        minimal.sort_by(|a, b| b[0].key.cmp(&a[0].key));
        // interreduce tails
        let mut out = Vec::with_capacity(minimal.len());
        for i in 0..minimal.len() {
            let others: Vec<&Poly<F>> = minimal
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, p)| p)
                .collect();
            let head = minimal[i][0].clone();
            let tail: Poly<F> = minimal[i][1..].to_vec();
            let mut red = self.reduce(&tail, &others, true);
            let mut p = vec![head];
            p.append(&mut red);
            Self::monic(&mut p);
            out.push(p);
        }
        out
    }
}
