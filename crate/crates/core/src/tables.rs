//! Published comparison tables for the Hermitian curves over GF(9) and GF(16),
//! and their recomputation.

use rayon::prelude::*;

use crate::bounds::{self, BoundEngine, BoundReport, PathChoice};
use crate::error::Result;
use crate::riemann_roch::DivisorVector;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Preset {
    /// q = 3, ten rows.
    T1,
    /// q = 4, seven rows.
    T2,
}

impl Preset {
    pub fn q(self) -> u32 {
        match self {
            Preset::T1 => 3,
            Preset::T2 => 4,
        }
    }

    pub fn parse(s: &str) -> Option<Preset> {
        match s.to_ascii_lowercase().as_str() {
            "t1" => Some(Preset::T1),
            "t2" => Some(Preset::T2),
            _ => None,
        }
    }

    pub fn rows(self) -> Vec<PublishedRow> {
        let raw: &[([u32; 3], [usize; 3], [u32; 3], usize, i64)] = match self {
            Preset::T1 => &[
                ([2, 1, 1], [2, 2, 2], [11, 11, 11], 2, 0),
                ([1, 2, 1], [2, 2, 2], [11, 11, 11], 2, 0),
                ([1, 1, 2], [2, 2, 2], [11, 11, 11], 2, 0),
                ([2, 2, 1], [2, 2, 3], [11, 11, 11], 2, 1),
                ([2, 1, 2], [2, 3, 2], [11, 11, 11], 2, 1),
                ([1, 2, 2], [3, 2, 2], [11, 11, 11], 2, 1),
                ([2, 2, 2], [3, 3, 3], [11, 11, 11], 2, 2),
                ([3, 2, 2], [4, 4, 4], [11, 11, 11], 3, 3),
                ([2, 3, 2], [4, 4, 4], [11, 11, 11], 3, 3),
                ([2, 2, 3], [4, 4, 4], [11, 11, 11], 4, 3),
            ],
            Preset::T2 => &[
                ([1, 2, 3], [2, 2, 2], [23, 23, 23], 2, -4),
                ([3, 1, 3], [2, 2, 2], [23, 23, 23], 2, -3),
                ([3, 2, 3], [2, 2, 2], [23, 23, 23], 2, -2),
                ([3, 3, 3], [2, 2, 2], [23, 23, 23], 2, -1),
                ([4, 3, 2], [2, 2, 2], [23, 23, 23], 2, -1),
                ([4, 3, 3], [2, 2, 2], [23, 23, 23], 2, 0),
                ([4, 4, 3], [2, 2, 3], [23, 23, 23], 2, 1),
            ],
        };
        raw.iter()
            .map(|(a, nu, lim, delta, goppa)| PublishedRow {
                a: DivisorVector::new(a.to_vec()),
                nu: nu.to_vec(),
                limits: DivisorVector::new(lim.to_vec()),
                delta: *delta,
                goppa: *goppa,
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PublishedRow {
    pub a: DivisorVector,
    pub nu: Vec<usize>,
    pub limits: DivisorVector,
    pub delta: usize,
    pub goppa: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub computed: BoundReport,
    pub published: PublishedRow,
}

impl TableRow {
    /// Human-readable differences from the published row (empty if none).
    pub fn discrepancies(&self) -> Vec<String> {
        let (c, p) = (&self.computed, &self.published);
        let mut out = Vec::new();
        if c.nu != p.nu {
            out.push(format!("{}: nu {:?} (published {:?})", c.a, c.nu, p.nu));
        }
        if c.limits != p.limits {
            out.push(format!("{}: A {} (published {})", c.a, c.limits, p.limits));
        }
        if c.delta != p.delta {
            out.push(format!("{}: delta {} (published {})", c.a, c.delta, p.delta));
        }
        if c.goppa != p.goppa {
            out.push(format!("{}: Goppa bound {} (published {})", c.a, c.goppa, p.goppa));
        }
        out
    }
}

/// Recompute every row of a preset, in table order.
pub fn run_table(engine: &BoundEngine, preset: Preset, path: &PathChoice) -> Result<Vec<TableRow>> {
    preset
        .rows()
        .into_par_iter()
        .map(|published| {
            let computed = engine.delta_bound(&published.a, path)?;
            Ok(TableRow { computed, published })
        })
        .collect()
}

/// Markdown table with the same columns as the published one.
pub fn markdown(rows: &[TableRow]) -> String {
    let reports: Vec<BoundReport> = rows.iter().map(|r| r.computed.clone()).collect();
    bounds::markdown(&reports)
}
