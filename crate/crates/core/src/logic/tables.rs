//! Direct extensions of the defined predicates on a one-sorted membership relation.

use std::cell::OnceCell;
use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use super::DefPred;

#[derive(Clone, Debug)]
pub(crate) enum Table {
    Unary(FixedBitSet),
    /// `rows[x]` holds every `y` with `P(x, y)`.
    Binary(Vec<FixedBitSet>),
}

impl Table {
    pub fn holds(&self, args: &[usize]) -> bool {
        match self {
            Table::Unary(b) => b.contains(args[0]),
            Table::Binary(rows) => rows[args[0]].contains(args[1]),
        }
    }
}

pub(crate) struct Sem<'a> {
    ext: &'a [FixedBitSet],
    down: OnceCell<Vec<FixedBitSet>>,
    codown: OnceCell<Vec<FixedBitSet>>,
    comp: OnceCell<Vec<Option<usize>>>,
    by_ext: OnceCell<HashMap<FixedBitSet, Vec<usize>>>,
}

impl<'a> Sem<'a> {
    pub fn new(ext: &'a [FixedBitSet]) -> Self {
        Sem {
            ext,
            down: OnceCell::new(),
            codown: OnceCell::new(),
            comp: OnceCell::new(),
            by_ext: OnceCell::new(),
        }
    }

    fn n(&self) -> usize {
        self.ext.len()
    }

    fn empty(&self) -> FixedBitSet {
        FixedBitSet::with_capacity(self.n())
    }

    /// `down[c]`: every `y` with `y ⊆ c`.
    fn down(&self) -> &Vec<FixedBitSet> {
        self.down.get_or_init(|| {
            (0..self.n())
                .map(|c| {
                    let mut row = self.empty();
                    for y in 0..self.n() {
                        if self.ext[y].is_subset(&self.ext[c]) {
                            row.insert(y);
                        }
                    }
                    row
                })
                .collect()
        })
    }

    fn by_ext(&self) -> &HashMap<FixedBitSet, Vec<usize>> {
        self.by_ext.get_or_init(|| {
            let mut m: HashMap<FixedBitSet, Vec<usize>> = HashMap::new();
            for (i, e) in self.ext.iter().enumerate() {
                m.entry(e.clone()).or_default().push(i);
            }
            m
        })
    }

    fn with_ext(&self, e: &FixedBitSet) -> &[usize] {
        self.by_ext().get(e).map(Vec::as_slice).unwrap_or(&[])
    }

    /// An element whose extension is the complement of `x`'s.
    fn comp(&self) -> &Vec<Option<usize>> {
        self.comp.get_or_init(|| {
            (0..self.n())
                .map(|x| {
                    let mut c = self.ext[x].clone();
                    c.toggle_range(..);
                    self.with_ext(&c).first().copied()
                })
                .collect()
        })
    }

    /// `codown[c]`: every `y` whose complement exists and is a subset of `c`.
    fn codown(&self) -> &Vec<FixedBitSet> {
        self.codown.get_or_init(|| {
            let down = self.down();
            let comp = self.comp();
            (0..self.n())
                .map(|c| {
                    let mut row = self.empty();
                    for (y, cy) in comp.iter().enumerate() {
                        if cy.is_some_and(|z| down[c].contains(z)) {
                            row.insert(y);
                        }
                    }
                    row
                })
                .collect()
        })
    }

    fn pot(&self, a: &FixedBitSet) -> FixedBitSet {
        let down = self.down();
        let mut out = self.empty();
        for c in a.ones() {
            out.union_with(&down[c]);
        }
        out
    }

    fn acc(&self, a: &FixedBitSet) -> FixedBitSet {
        let mut out = self.pot(a);
        for c in a.ones() {
            out.union_with(&self.ext[c]);
        }
        out
    }

    fn bpot(&self, a: &FixedBitSet) -> FixedBitSet {
        let down = self.down();
        let codown = self.codown();
        let mut out = self.empty();
        for c in a.ones().filter(|&c| !self.ext[c].contains(c)) {
            out.union_with(&down[c]);
            out.union_with(&codown[c]);
        }
        out
    }

    fn is_hist(&self, h: usize) -> bool {
        self.ext[h].ones().all(|x| {
            let mut part = self.ext[x].clone();
            part.intersect_with(&self.ext[h]);
            self.pot(&part) == self.ext[x]
        })
    }

    fn is_bhist(&self, h: usize) -> bool {
        !self.ext[h].contains(h)
            && self.ext[h].ones().all(|x| {
                let mut part = self.ext[x].clone();
                part.intersect_with(&self.ext[h]);
                self.bpot(&part) == self.ext[x]
            })
    }

    fn unary(&self, f: impl Fn(usize) -> bool) -> Table {
        let mut b = self.empty();
        for x in 0..self.n() {
            if f(x) {
                b.insert(x);
            }
        }
        Table::Unary(b)
    }

    /// `rows[b]` holds every `a` with `ext[b] = op(ext[a])`.
    fn image_of(&self, op: impl Fn(&FixedBitSet) -> FixedBitSet) -> Table {
        let mut rows = vec![self.empty(); self.n()];
        for a in 0..self.n() {
            let img = op(&self.ext[a]);
            for &b in self.with_ext(&img) {
                rows[b].insert(a);
            }
        }
        Table::Binary(rows)
    }

    fn levels_of(
        &self,
        hist: impl Fn(usize) -> bool,
        op: impl Fn(&FixedBitSet) -> FixedBitSet,
    ) -> Table {
        let mut b = self.empty();
        for h in (0..self.n()).filter(|&h| hist(h)) {
            for &s in self.with_ext(&op(&self.ext[h])) {
                b.insert(s);
            }
        }
        Table::Unary(b)
    }

    pub fn table(&self, pred: DefPred) -> Table {
        let n = self.n();
        match pred {
            DefPred::Sub => {
                let down = self.down();
                let mut rows = vec![self.empty(); n];
                for (y, d) in down.iter().enumerate() {
                    for x in d.ones() {
                        rows[x].insert(y);
                    }
                }
                Table::Binary(rows)
            }
            DefPred::CoSub => {
                let Table::Binary(sub) = self.table(DefPred::Sub) else {
                    unreachable!()
                };
                let comp = self.comp();
                let rows = (0..n)
                    .map(|x| {
                        comp[x]
                            .map(|z| sub[z].clone())
                            .unwrap_or_else(|| self.empty())
                    })
                    .collect();
                Table::Binary(rows)
            }
            DefPred::Trans => self.unary(|a| self.ext[a].is_subset(&self.down()[a])),
            DefPred::Potent => self.unary(|a| self.pot(&self.ext[a]).is_subset(&self.ext[a])),
            DefPred::IsPot => self.image_of(|a| self.pot(a)),
            DefPred::IsAcc => self.image_of(|a| self.acc(a)),
            DefPred::IsBPot => self.image_of(|a| self.bpot(a)),
            DefPred::IsComp => self.image_of(|a| {
                let mut c = a.clone();
                c.toggle_range(..);
                c
            }),
            DefPred::Hist => self.unary(|h| self.is_hist(h)),
            DefPred::Lev => self.levels_of(|h| self.is_hist(h), |a| self.pot(a)),
            DefPred::BHist => self.unary(|h| self.is_bhist(h)),
            DefPred::BLev => self.levels_of(|h| self.is_bhist(h), |a| self.bpot(a)),
            DefPred::Helow => {
                let cands: Vec<usize> = (0..n)
                    .filter(|&c| {
                        self.ext[c].is_subset(&self.down()[c])
                            && self.ext[c].ones().all(|x| !self.ext[x].contains(x))
                    })
                    .collect();
                self.unary(|a| cands.iter().any(|&c| self.ext[a].is_subset(&self.ext[c])))
            }
            DefPred::MaxLev => self.unary(|s| self.down()[s].count_ones(..) == n),
        }
    }
}
