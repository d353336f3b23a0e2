//! Host abstraction shared by the counting engines: a 0/1 host graph counts
//! homomorphisms in big integers, a weighted host with loops accumulates
//! exact rational mass. A u128 view backs the fast path for small base
//! patterns, where the value bound host^pattern is known to fit.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::Result;
use crate::graph::{AdjMatrix, LabeledGraph};
use crate::hom::elimination::{eliminate, FactorTable};
use crate::value::CountValue;
use crate::weighted::WeightedGraph;

pub trait Host: Sync {
    type V: CountValue;
    fn size(&self) -> usize;
    /// Symmetric edge mass between host vertices (diagonal = loop weight;
    /// zero for simple unweighted hosts).
    fn weight(&self, u: usize, v: usize) -> Self::V;
    fn weight_is_zero(&self, u: usize, v: usize) -> bool;
    fn weight_is_one(&self, u: usize, v: usize) -> bool;
    /// Sum of `weight(u, v)` over all host vertices v (a degree for 0/1 hosts).
    fn row_sum(&self, u: usize) -> Self::V;

    /// Rooted table of a base pattern via variable elimination. Hosts may
    /// route this through a cheaper value type when the bound fits.
    fn base_table(
        &self,
        g: &LabeledGraph,
        keep: &[usize],
        width_cap: usize,
    ) -> Result<FactorTable<Self::V>>
    where
        Self: Sized,
    {
        eliminate(g.n(), g.edges(), keep, self, width_cap)
    }
}

pub struct IntHost<'a> {
    pub adj: &'a AdjMatrix,
}

impl Host for IntHost<'_> {
    type V = BigInt;
    fn size(&self) -> usize {
        self.adj.n()
    }
    fn weight(&self, u: usize, v: usize) -> BigInt {
        BigInt::from(self.adj.get(u, v) as u8)
    }
    fn weight_is_zero(&self, u: usize, v: usize) -> bool {
        !self.adj.get(u, v)
    }
    fn weight_is_one(&self, u: usize, v: usize) -> bool {
        self.adj.get(u, v)
    }
    fn row_sum(&self, u: usize) -> BigInt {
        BigInt::from(self.adj.degree(u))
    }

    fn base_table(
        &self,
        g: &LabeledGraph,
        keep: &[usize],
        width_cap: usize,
    ) -> Result<FactorTable<BigInt>> {
        // counts are bounded by host^pattern; go through u128 when that fits
        let host_bits = usize::BITS - self.adj.n().leading_zeros();
        if host_bits as usize * g.n() <= 120 {
            let table = eliminate(
                g.n(),
                g.edges(),
                keep,
                &U128Host { adj: self.adj },
                width_cap,
            )?;
            return Ok(FactorTable {
                scope: table.scope,
                host_size: table.host_size,
                values: table.values.into_iter().map(BigInt::from).collect(),
            });
        }
        eliminate(g.n(), g.edges(), keep, self, width_cap)
    }
}

pub struct U128Host<'a> {
    pub adj: &'a AdjMatrix,
}

impl Host for U128Host<'_> {
    type V = u128;
    fn size(&self) -> usize {
        self.adj.n()
    }
    fn weight(&self, u: usize, v: usize) -> u128 {
        self.adj.get(u, v) as u128
    }
    fn weight_is_zero(&self, u: usize, v: usize) -> bool {
        !self.adj.get(u, v)
    }
    fn weight_is_one(&self, u: usize, v: usize) -> bool {
        self.adj.get(u, v)
    }
    fn row_sum(&self, u: usize) -> u128 {
        self.adj.degree(u) as u128
    }
}

pub struct RatHost<'a> {
    pub weights: &'a WeightedGraph,
}

impl Host for RatHost<'_> {
    type V = BigRational;
    fn size(&self) -> usize {
        self.weights.k()
    }
    fn weight(&self, u: usize, v: usize) -> BigRational {
        self.weights.get(u, v).clone()
    }
    fn weight_is_zero(&self, u: usize, v: usize) -> bool {
        self.weights.get(u, v).is_zero()
    }
    fn weight_is_one(&self, u: usize, v: usize) -> bool {
        use num_traits::One;
        self.weights.get(u, v).is_one()
    }
    fn row_sum(&self, u: usize) -> BigRational {
        self.weights.row_sum(u)
    }
}
