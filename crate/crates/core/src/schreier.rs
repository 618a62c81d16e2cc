//! Deterministic Schreier–Sims: base and strong generating set.
//!
//! Base points are chosen greedily as the first point moved by a generator
//! that fixes all current base points. Level `i` keeps the strong generators
//! fixing `b_0 … b_{i−1}`, the orbit of `b_i` under them and an explicit
//! transversal `u_β` with `b_i^{u_β} = β`.

use crate::perm::Permutation;

#[derive(Clone, Debug)]
struct Level {
    point: usize,
    gens: Vec<Permutation>,
    orbit: Vec<usize>,
    transversal: Vec<Option<Permutation>>,
}

impl Level {
    fn new(point: usize, degree: usize) -> Self {
        let mut transversal = vec![None; degree];
        transversal[point] = Some(Permutation::identity(degree));
        Level {
            point,
            gens: Vec::new(),
            orbit: vec![point],
            transversal,
        }
    }

    fn rebuild_orbit(&mut self) {
        let degree = self.transversal.len();
        self.transversal = vec![None; degree];
        self.transversal[self.point] = Some(Permutation::identity(degree));
        self.orbit = vec![self.point];
        let mut head = 0;
        while head < self.orbit.len() {
            let beta = self.orbit[head];
            head += 1;
            for s in &self.gens {
                let gamma = s.image(beta);
                if self.transversal[gamma].is_none() {
                    let u = self.transversal[beta].as_ref().unwrap().compose(s);
                    self.transversal[gamma] = Some(u);
                    self.orbit.push(gamma);
                }
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    pub fn new(degree: usize, generators: &[Permutation]) -> Self {
        let gens: Vec<Permutation> = generators
            .iter()
            .filter(|g| !g.is_identity())
            .cloned()
            .collect();
        let mut chain = StabChain {
            degree,
            levels: Vec::new(),
        };
        if gens.is_empty() {
            return chain;
        }
        // Initial base: every generator must move some base point.
        let mut base: Vec<usize> = Vec::new();
        for g in &gens {
            if base.iter().all(|&b| g.image(b) == b) {
                base.push(g.first_moved_point().unwrap());
            }
        }
        for (i, &b) in base.iter().enumerate() {
            let mut level = Level::new(b, degree);
            level.gens = gens
                .iter()
                .filter(|g| base[..i].iter().all(|&c| g.image(c) == c))
                .cloned()
                .collect();
            level.rebuild_orbit();
            chain.levels.push(level);
        }
        chain.complete();
        chain
    }

    fn complete(&mut self) {
        let mut i = self.levels.len() as isize - 1;
        'outer: while i >= 0 {
            let lvl = i as usize;
            let orbit = self.levels[lvl].orbit.clone();
            let gens = self.levels[lvl].gens.clone();
            for &beta in &orbit {
                let u_beta = self.levels[lvl].transversal[beta].clone().unwrap();
                for s in &gens {
                    let gamma = s.image(beta);
                    let u_gamma_inv = self.levels[lvl].transversal[gamma]
                        .as_ref()
                        .unwrap()
                        .inverse();
                    let schreier = u_beta.compose(s).compose(&u_gamma_inv);
                    if schreier.is_identity() {
                        continue;
                    }
                    let (residue, j) = self.strip_from(schreier, lvl + 1);
                    let k = self.levels.len();
                    let mut target = j;
                    if j == k {
                        if residue.is_identity() {
                            continue;
                        }
                        let b = residue.first_moved_point().unwrap();
                        self.levels.push(Level::new(b, self.degree));
                        target = k;
                    }
                    for l in (lvl + 1)..=target {
                        self.levels[l].gens.push(residue.clone());
                        self.levels[l].rebuild_orbit();
                    }
                    i = target as isize;
                    continue 'outer;
                }
            }
            i -= 1;
        }
    }

    /// Sifts `h` through levels `start..`; returns the residue and the level
    /// at which sifting stopped (`levels.len()` if it passed every level).
    fn strip_from(&self, mut h: Permutation, start: usize) -> (Permutation, usize) {
        for (l, level) in self.levels.iter().enumerate().skip(start) {
            let beta = h.image(level.point);
            match &level.transversal[beta] {
                None => return (h, l),
                Some(u) => h = h.compose(&u.inverse()),
            }
        }
        (h, self.levels.len())
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        let (residue, j) = self.strip_from(p.clone(), 0);
        j == self.levels.len() && residue.is_identity()
    }

    pub fn order(&self) -> u128 {
        self.levels
            .iter()
            .map(|l| l.orbit.len() as u128)
            .product()
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.point).collect()
    }
}
