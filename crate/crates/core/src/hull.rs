//! Convex-layer anchoring and wedge sub-cubing, both as unit-clause blocks.
//!
//! A hull template prescribes nested convex layers: labels `0..h_0` form the
//! outermost polygon in counterclockwise cyclic order, the next `h_1` labels
//! the next layer, and so on; leftover labels are unconstrained interior
//! points. All anchoring is expressed with unit clauses, so templates change
//! instance size only marginally.
//!
//! The wedge sub-cube additionally pins the rotation between consecutive
//! layers: for layer `i` with offset `w_i > 0`, anchor `a = s_(i-1)` sees
//! `b = s_i` and `c = s_i + w_i` as the two angular extremes of everything
//! deeper, i.e. every later point lies counterclockwise of ray `ab` and
//! clockwise of ray `ac`.

use crate::combinatorics::binomial;
use crate::orientation::{literal_of_ordered, SignedLiteral};
use crate::{Error, Result};

/// Layer-size vector `h`; every layer has at least 3 vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HullTemplate {
    sizes: Vec<u32>,
}

impl HullTemplate {
    pub fn new(sizes: Vec<u32>) -> Result<Self> {
        if sizes.is_empty() {
            return Err(Error::Template("layer list is empty".into()));
        }
        if let Some(&bad) = sizes.iter().find(|&&h| h < 3) {
            return Err(Error::Template(format!("layer size {bad} < 3")));
        }
        Ok(Self { sizes })
    }

    pub fn sizes(&self) -> &[u32] {
        &self.sizes
    }

    pub fn layer_count(&self) -> usize {
        self.sizes.len()
    }

    /// Total anchored point count `H`.
    pub fn total(&self) -> u32 {
        self.sizes.iter().sum()
    }

    /// Start label `s_i` of layer `i`; `start(layer_count()) == H`.
    pub fn start(&self, i: usize) -> u32 {
        self.sizes[..i].iter().sum()
    }

    pub fn validate_for(&self, n: u32) -> Result<()> {
        let h = self.total();
        if h > n {
            return Err(Error::Template(format!(
                "layers sum to {h}, exceeding n={n}"
            )));
        }
        Ok(())
    }
}

impl std::fmt::Display for HullTemplate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.sizes.iter().map(|h| h.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

/// Per-layer wedge offsets `w`; `w_0 = 0` by convention and `w_i = 0`
/// disables anchoring at layer `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubCube {
    offsets: Vec<u32>,
}

impl SubCube {
    pub fn new(offsets: Vec<u32>, template: &HullTemplate) -> Result<Self> {
        if offsets.len() != template.layer_count() {
            return Err(Error::SubCube(format!(
                "offset count {} does not match layer count {}",
                offsets.len(),
                template.layer_count()
            )));
        }
        if offsets[0] != 0 {
            return Err(Error::SubCube("w_0 must be 0".into()));
        }
        for (i, (&w, &h)) in offsets.iter().zip(template.sizes()).enumerate() {
            if w >= h {
                return Err(Error::SubCube(format!(
                    "offset w_{i}={w} out of range for layer size {h}"
                )));
            }
        }
        Ok(Self { offsets })
    }

    pub fn offsets(&self) -> &[u32] {
        &self.offsets
    }
}

impl std::fmt::Display for SubCube {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.offsets.iter().map(|w| w.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

/// Analytic unit count of `layer_units`.
pub fn layer_unit_count(template: &HullTemplate, n: u32) -> u64 {
    let mut count = 0u64;
    for (i, &h) in template.sizes().iter().enumerate() {
        let next_start = template.start(i + 1) as u64;
        count += binomial(h as u64, 3);
        count += h as u64 * (n as u64 - next_start);
    }
    count
}

/// Analytic unit count of `wedge_units`.
pub fn wedge_unit_count(template: &HullTemplate, subcube: &SubCube, n: u32) -> u64 {
    let mut count = 0u64;
    for (i, &w) in subcube.offsets().iter().enumerate() {
        if i == 0 || w == 0 {
            continue;
        }
        let s_i = template.start(i) as u64;
        count += 2 * (n as u64 - s_i - 2);
    }
    count
}

/// Unit literals anchoring the convex-layer structure.
///
/// Within-layer units first (by layer, then triple rank): every index triple
/// `p < q < r` inside a layer is counterclockwise. Then nesting units (by
/// layer, then directed edge, then point): every point with a label beyond
/// the layer lies on the interior (left) side of each cyclically consecutive
/// directed edge.
pub fn layer_units(template: &HullTemplate, n: u32) -> Result<Vec<SignedLiteral>> {
    template.validate_for(n)?;
    let mut units = Vec::with_capacity(layer_unit_count(template, n) as usize);
    // within-layer convexity
    for (i, &h) in template.sizes().iter().enumerate() {
        let s = template.start(i);
        for p in s..s + h {
            for q in p + 1..s + h {
                for r in q + 1..s + h {
                    units.push(literal_of_ordered(p, q, r, n)?);
                }
            }
        }
    }
    // nesting
    for (i, &h) in template.sizes().iter().enumerate() {
        let s = template.start(i);
        let next_start = template.start(i + 1);
        for j in 0..h {
            let v = s + j;
            let v_next = s + (j + 1) % h;
            for x in next_start..n {
                units.push(literal_of_ordered(v, v_next, x, n)?);
            }
        }
    }
    debug_assert_eq!(units.len() as u64, layer_unit_count(template, n));
    Ok(units)
}

/// Unit literals of the wedge sub-cube (by layer, then point). For each
/// anchored layer, every point labeled past `b = s_i` except `c` itself is
/// forced strictly inside the wedge at `a`:
/// `chi(a, b, x) = +` and `chi(a, x, c) = +`.
pub fn wedge_units(template: &HullTemplate, subcube: &SubCube, n: u32) -> Result<Vec<SignedLiteral>> {
    template.validate_for(n)?;
    let mut units = Vec::with_capacity(wedge_unit_count(template, subcube, n) as usize);
    for (i, &w) in subcube.offsets().iter().enumerate() {
        if i == 0 || w == 0 {
            continue;
        }
        let anchor = template.start(i - 1);
        let b = template.start(i);
        let c = b + w;
        for x in b + 1..n {
            if x == c {
                continue;
            }
            units.push(literal_of_ordered(anchor, b, x, n)?);
            units.push(literal_of_ordered(anchor, x, c, n)?);
        }
    }
    debug_assert_eq!(units.len() as u64, wedge_unit_count(template, subcube, n));
    Ok(units)
}
