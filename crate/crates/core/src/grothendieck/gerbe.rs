//! Gerbes `𝒢ˣ_n(σ)` over simplices of the nerve of the base.
//!
//! A degree-`k` cell over an `n`-chain `σ = (f_1, …, f_n)` with objects
//! `c_0 → … → c_n` is a tuple `(γ_0, …, γ_n; β)` with `γ_j` a degree-`k`
//! cell over `d_j σ` and `β` a `k`-simplex of `[Δ[n], X(c_n)]`, such that
//! `β · δ_j = p₂(γ_j)` for `j < n` and `β · δ_n = X(f_n) ∘ p₂(γ_n)`.
//! The `γ_j` must also form a matching family, `d_a γ_b = d_{b-1} γ_a`
//! for `a < b`; without it the cells over a collapsing `X(f)` carry more
//! data than a family of simplices indexed by subsets of `[n]`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::error::{Budget, Error, Result};
use crate::grothendieck::diagram::Diagram;
use crate::scat::function_complex::{function_complex, postcompose, precompose, FunctionComplex};
use crate::scat::map::SimplicialMap;
use crate::scat::monotone::MonotoneMap;
use crate::scat::nerve::Chain;
use crate::scat::sset::{Keyed, SimplicialSet};
use crate::scat::standard;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GerbeCell {
    /// `γ_j`, as ids in the gerbe over `d_j σ`. Empty over a vertex.
    pub faces: Vec<usize>,
    /// `β` as an id in `[Δ[n], X(c_n)]`; over a vertex, a simplex of `X(d)`.
    pub beta: usize,
}

#[derive(Debug)]
pub struct Gerbe {
    pub chain: Chain,
    pub keyed: Keyed<GerbeCell>,
    /// `[Δ[n], X(c_n)]`.
    pub complex: Arc<FunctionComplex>,
    /// `p₂ : 𝒢ˣ_n(σ) → [Δ[n], X(c_n)]`.
    pub p2: SimplicialMap,
    /// The gerbes over `d_j σ`.
    pub parts: Vec<Arc<Gerbe>>,
}

impl Gerbe {
    pub fn sset(&self) -> &SimplicialSet {
        &self.keyed.sset
    }

    pub fn n(&self) -> usize {
        self.chain.len()
    }

    pub fn cell(&self, k: usize, id: usize) -> &GerbeCell {
        self.keyed.key(k, id)
    }

    /// The component `𝒢ˣ_n(σ) → 𝒢ˣ_{n−1}(d_j σ)` of `p₁`.
    pub fn p1(&self, j: usize) -> SimplicialMap {
        SimplicialMap::new(
            (0..=self.keyed.dim())
                .map(|k| self.keyed.keys(k).iter().map(|c| c.faces[j]).collect())
                .collect(),
        )
    }
}

/// Memoized gerbes of a diagram up to a fixed degree `k_max`.
pub struct GerbeTower<'a> {
    pub diagram: &'a Diagram,
    pub k_max: usize,
    budget: &'a Budget,
    gerbes: Mutex<HashMap<Chain, Arc<Gerbe>>>,
    complexes: Mutex<HashMap<(usize, usize), Arc<FunctionComplex>>>,
    operators: Mutex<HashMap<(usize, MonotoneMap), Arc<SimplicialMap>>>,
    transports: Mutex<HashMap<(usize, usize), Arc<SimplicialMap>>>,
}

impl<'a> GerbeTower<'a> {
    pub fn new(diagram: &'a Diagram, k_max: usize, budget: &'a Budget) -> Result<Self> {
        if k_max > diagram.dim() {
            return Err(Error::InsufficientTruncation {
                needed: k_max,
                available: diagram.dim(),
                context: "gerbe degree".into(),
            });
        }
        Ok(GerbeTower {
            diagram,
            k_max,
            budget,
            gerbes: Mutex::new(HashMap::new()),
            complexes: Mutex::new(HashMap::new()),
            operators: Mutex::new(HashMap::new()),
            transports: Mutex::new(HashMap::new()),
        })
    }

    fn base(&self) -> &crate::scat::FiniteCategory {
        &self.diagram.base
    }

    /// `[Δ[n], X(d)]` truncated at `k_max`.
    pub fn complex(&self, n: usize, d: usize) -> Result<Arc<FunctionComplex>> {
        if let Some(fc) = self.complexes.lock().unwrap().get(&(n, d)) {
            return Ok(fc.clone());
        }
        let x = self.diagram.at(d);
        let fc = Arc::new(function_complex(&standard::delta(n, x.dim()), x, self.k_max, self.budget)?);
        self.complexes.lock().unwrap().insert((n, d), fc.clone());
        Ok(fc)
    }

    /// `[Δ[n], X(d)] → [Δ[m], X(d)]` induced by `θ : [m] → [n]`.
    pub fn operator(&self, d: usize, theta: &MonotoneMap) -> Result<Arc<SimplicialMap>> {
        let key = (d, theta.clone());
        if let Some(m) = self.operators.lock().unwrap().get(&key) {
            return Ok(m.clone());
        }
        let from = self.complex(theta.codomain_dim(), d)?;
        let to = self.complex(theta.domain_dim(), d)?;
        let m = Arc::new(precompose(&from, &standard::operator_map(theta, self.diagram.dim()), &to)?);
        self.operators.lock().unwrap().insert(key, m.clone());
        Ok(m)
    }

    /// `X(f)_* : [Δ[n], X(source f)] → [Δ[n], X(target f)]`.
    pub fn transport(&self, n: usize, f: usize) -> Result<Arc<SimplicialMap>> {
        if let Some(m) = self.transports.lock().unwrap().get(&(n, f)) {
            return Ok(m.clone());
        }
        let from = self.complex(n, self.base().source(f))?;
        let to = self.complex(n, self.base().target(f))?;
        let m = Arc::new(postcompose(&from, self.diagram.map(f), &to)?);
        self.transports.lock().unwrap().insert((n, f), m.clone());
        Ok(m)
    }

    pub fn gerbe(&self, chain: &Chain) -> Result<Arc<Gerbe>> {
        if let Some(g) = self.gerbes.lock().unwrap().get(chain) {
            return Ok(g.clone());
        }
        self.budget.spend(1)?;
        let g = Arc::new(if chain.is_empty() {
            self.vertex_gerbe(chain)?
        } else {
            self.build(chain)?
        });
        self.gerbes.lock().unwrap().insert(chain.clone(), g.clone());
        Ok(g)
    }

    fn vertex_gerbe(&self, chain: &Chain) -> Result<Gerbe> {
        let d = chain.start;
        let x = self.diagram.at(d).truncate(self.k_max)?;
        let fc = self.complex(0, d)?;
        let keyed = Keyed::build(
            self.k_max,
            (0..=self.k_max)
                .map(|k| {
                    x.simplices(k)
                        .map(|y| GerbeCell {
                            faces: Vec::new(),
                            beta: y,
                        })
                        .collect()
                })
                .collect(),
            |k, i, c| GerbeCell {
                faces: Vec::new(),
                beta: x.face(k, i, c.beta),
            },
            |k, j, c| GerbeCell {
                faces: Vec::new(),
                beta: x.degen(k, j, c.beta),
            },
            |k, c| x.label(k, c.beta).to_string(),
        )?;
        // p₂ : X(d) ≅ [Δ[0], X(d)], x ↦ ((∗, α) ↦ x · α)
        let p2 = (0..=self.k_max)
            .map(|k| {
                let prod = &fc.products[k];
                x.simplices(k)
                    .map(|y| {
                        let comps: Vec<Vec<usize>> = (0..=prod.keyed.dim())
                            .map(|m| {
                                prod.keyed
                                    .keys(m)
                                    .iter()
                                    .map(|&(_, al)| {
                                        let alpha = fc.deltas[k].key(m, al);
                                        self.diagram.at(d).act(k, y, alpha)
                                    })
                                    .collect()
                            })
                            .collect();
                        fc.keyed
                            .id(k, &comps)
                            .ok_or_else(|| Error::Invalid("simplex missing from [Δ[0], X(d)]".into()))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Gerbe {
            chain: chain.clone(),
            keyed,
            complex: fc,
            p2: SimplicialMap::new(p2),
            parts: Vec::new(),
        })
    }

    fn build(&self, chain: &Chain) -> Result<Gerbe> {
        let c = self.base();
        let n = chain.len();
        let last = chain.last_object(c);
        let fc = self.complex(n, last)?;
        let parts: Vec<Arc<Gerbe>> = (0..=n).map(|j| self.gerbe(&chain.face(c, j))).collect::<Result<_>>()?;
        let restrictions: Vec<Arc<SimplicialMap>> = (0..=n)
            .map(|j| self.operator(last, &MonotoneMap::coface(n, j)))
            .collect::<Result<_>>()?;
        let transport = self.transport(n - 1, *chain.arrows.last().unwrap())?;
        let mut levels = Vec::with_capacity(self.k_max + 1);
        for k in 0..=self.k_max {
            // preimages of each restriction value under p₂ (or X(f_n) ∘ p₂)
            let preimages: Vec<HashMap<usize, Vec<usize>>> = (0..=n)
                .map(|j| {
                    let mut index: HashMap<usize, Vec<usize>> = HashMap::new();
                    for g in parts[j].sset().simplices(k) {
                        let mut v = parts[j].p2.apply(k, g);
                        if j == n {
                            v = transport.apply(k, v);
                        }
                        index.entry(v).or_default().push(g);
                    }
                    index
                })
                .collect();
            let mut level = Vec::new();
            for beta in fc.sset().simplices(k) {
                let candidates: Vec<&[usize]> = (0..=n)
                    .map(|j| {
                        preimages[j]
                            .get(&restrictions[j].apply(k, beta))
                            .map(|v| v.as_slice())
                            .unwrap_or(&[])
                    })
                    .collect();
                if candidates.iter().any(|c| c.is_empty()) {
                    continue;
                }
                let mut chosen = Vec::with_capacity(n + 1);
                self.extend(k, &parts, &candidates, &mut chosen, &mut |faces| {
                    level.push(GerbeCell {
                        faces: faces.to_vec(),
                        beta,
                    });
                })?;
            }
            levels.push(level);
        }
        let fs = fc.sset().clone();
        let keyed = Keyed::build(
            self.k_max,
            levels,
            |k, i, cell| GerbeCell {
                faces: cell.faces.iter().zip(&parts).map(|(&g, p)| p.sset().face(k, i, g)).collect(),
                beta: fs.face(k, i, cell.beta),
            },
            |k, j, cell| GerbeCell {
                faces: cell.faces.iter().zip(&parts).map(|(&g, p)| p.sset().degen(k, j, g)).collect(),
                beta: fs.degen(k, j, cell.beta),
            },
            |k, cell| {
                let parts: Vec<String> = cell
                    .faces
                    .iter()
                    .zip(&parts)
                    .map(|(&g, p)| p.sset().label(k, g).to_string())
                    .collect();
                format!("({}; {})", parts.join(", "), fs.label(k, cell.beta))
            },
        )?;
        let p2 = SimplicialMap::new(
            (0..=self.k_max)
                .map(|k| keyed.keys(k).iter().map(|c| c.beta).collect())
                .collect(),
        );
        Ok(Gerbe {
            chain: chain.clone(),
            keyed,
            complex: fc,
            p2,
            parts,
        })
    }

    /// `ι^j_ρ : 𝒢ˣ_{n−1}(ρ) → 𝒢ˣ_n(s_j ρ)` on the degree-`k` cell `g`:
    /// `β = p₂(g) · σ_j`, `γ_j = γ_{j+1} = g`, and the other components
    /// are degeneracies of the faces of `g`.
    pub fn iota(&self, rho: &Chain, j: usize, k: usize, g: usize) -> Result<usize> {
        let c = self.base();
        let n = rho.len() + 1;
        let from = self.gerbe(rho)?;
        let target_chain = rho.degen(c, j);
        let target = self.gerbe(&target_chain)?;
        let last = rho.last_object(c);
        let op = self.operator(last, &MonotoneMap::codegeneracy(n - 1, j))?;
        let beta = op.apply(k, from.p2.apply(k, g));
        let cell = from.cell(k, g);
        let faces = (0..=n)
            .map(|i| {
                if i == j || i == j + 1 {
                    Ok(g)
                } else if i < j {
                    self.iota(&rho.face(c, i), j - 1, k, cell.faces[i])
                } else {
                    self.iota(&rho.face(c, i - 1), j, k, cell.faces[i - 1])
                }
            })
            .collect::<Result<Vec<_>>>()?;
        target
            .keyed
            .id(k, &GerbeCell { faces, beta })
            .ok_or_else(|| Error::Invalid(format!("degeneracy s_{j} leaves the gerbe over {}", target_chain.label(c))))
    }

    /// Backtrack over the candidate `γ_j`, keeping matching families.
    #[allow(clippy::too_many_arguments)]
    fn extend(
        &self,
        k: usize,
        parts: &[Arc<Gerbe>],
        candidates: &[&[usize]],
        chosen: &mut Vec<usize>,
        emit: &mut dyn FnMut(&[usize]),
    ) -> Result<()> {
        let b = chosen.len();
        if b == candidates.len() {
            emit(chosen);
            return Ok(());
        }
        for &g in candidates[b] {
            self.budget.spend(1)?;
            let gb = parts[b].cell(k, g);
            // d_a γ_b = d_{b−1} γ_a, both in the gerbe over d_a d_b σ
            let matching = gb.faces.is_empty() || (0..b).all(|a| gb.faces[a] == parts[a].cell(k, chosen[a]).faces[b - 1]);
            if matching {
                chosen.push(g);
                self.extend(k, parts, candidates, chosen, emit)?;
                chosen.pop();
            }
        }
        Ok(())
    }
}
