//! Global variable numbering, streaming DIMACS emission, and the manifest.
//!
//! Triple variables occupy `1..=C(n,3)` in lexicographic triple order;
//! selectors follow at `C(n,3) + 14*rank(Q) + p`. Clause counts have closed
//! forms per block, so the DIMACS header is written up front and the file is
//! produced in one streaming pass with O(clause) memory. Emission counts
//! every block as it streams and fails loudly if a count ever disagrees with
//! its precomputed value.

use std::io::Write;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::cc5::{cc5_block, cc5_block_count};
use crate::combinatorics::binomial;
use crate::exclusion::{exclusion_block, exclusion_block_count};
use crate::fourset::{fourset_block, CLAUSES_PER_FOURSET, PATTERN_COUNT};
use crate::hull::{layer_unit_count, layer_units, wedge_unit_count, wedge_units, HullTemplate, SubCube};
use crate::orientation::{triple_index, SignedLiteral, Triple, VarId};
use crate::params::{Cc5Mode, EncodingParams};
use crate::{Error, Result};

/// Variable id layout of one instance.
#[derive(Debug, Clone)]
pub struct VarNumbering {
    n: u32,
    triple_vars: u64,
    selector_vars: u64,
}

impl VarNumbering {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn triple_count(&self) -> u64 {
        self.triple_vars
    }

    pub fn selector_count(&self) -> u64 {
        self.selector_vars
    }

    pub fn total_vars(&self) -> u64 {
        self.triple_vars + self.selector_vars
    }

    pub fn triple_var(&self, t: Triple) -> Result<VarId> {
        triple_index(t, self.n)
    }

    /// Selector variable of (4-set rank, 0-based pattern index).
    pub fn selector_var(&self, rank4: u64, pattern: usize) -> VarId {
        debug_assert!(pattern < PATTERN_COUNT);
        debug_assert!(rank4 < binomial(self.n as u64, 4));
        VarId::new((self.triple_vars + rank4 * PATTERN_COUNT as u64 + pattern as u64) as u32 + 1)
    }
}

/// Compute the variable layout. DIMACS literals are 32-bit signed, so the
/// total variable count is capacity-checked against that range.
pub fn assign_variables(params: &EncodingParams) -> Result<VarNumbering> {
    let n = params.n() as u64;
    let triple_vars = binomial(n, 3);
    let selector_vars = PATTERN_COUNT as u64 * binomial(n, 4);
    let total = triple_vars + selector_vars;
    if total > i32::MAX as u64 {
        return Err(Error::Capacity(format!(
            "instance needs {total} variables, exceeding the 32-bit DIMACS literal range"
        )));
    }
    Ok(VarNumbering {
        n: params.n(),
        triple_vars,
        selector_vars,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VarCounts {
    pub triples: u64,
    pub selectors: u64,
    pub total: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClauseCounts {
    pub cc5: u64,
    pub fourset: u64,
    pub exclusion: u64,
    pub layer_units: u64,
    pub wedge_units: u64,
    pub total: u64,
}

/// Machine-readable record of one emitted instance: parameters, exact
/// per-block counts, and the SHA-256 of the DIMACS bytes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub schema_version: u32,
    pub n: u32,
    pub k: u32,
    pub cc5_mode: String,
    pub layers: Option<Vec<u32>>,
    pub subcube: Option<Vec<u32>>,
    pub variables: VarCounts,
    pub clauses: ClauseCounts,
    pub sha256: String,
}

impl Manifest {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("manifest serializes")
    }

    pub fn from_json(text: &str) -> Result<Manifest> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("manifest: {e}")))
    }
}

/// Analytic per-block clause counts; emission must reproduce these exactly.
pub fn precount(
    params: &EncodingParams,
    mode: Cc5Mode,
    template: Option<&HullTemplate>,
    subcube: Option<&SubCube>,
) -> Result<ClauseCounts> {
    let n = params.n();
    let cc5 = cc5_block_count(n, mode);
    let fourset = CLAUSES_PER_FOURSET * binomial(n as u64, 4);
    let exclusion = exclusion_block_count(n, params.k());
    let layer = match template {
        Some(t) => {
            t.validate_for(n)?;
            layer_unit_count(t, n)
        }
        None => 0,
    };
    let wedge = match (template, subcube) {
        (Some(t), Some(s)) => wedge_unit_count(t, s, n),
        (None, Some(_)) => {
            return Err(Error::InvalidParams(
                "a sub-cube requires a hull template".into(),
            ))
        }
        _ => 0,
    };
    Ok(ClauseCounts {
        cc5,
        fourset,
        exclusion,
        layer_units: layer,
        wedge_units: wedge,
        total: cc5 + fourset + exclusion + layer + wedge,
    })
}

struct HashingWriter<W: Write> {
    inner: W,
    hasher: Sha256,
    bytes: u64,
}

impl<W: Write> Write for HashingWriter<W> {
    fn write(&mut self, buf: &[u8]) -> std::io::Result<usize> {
        let written = self.inner.write(buf)?;
        self.hasher.update(&buf[..written]);
        self.bytes += written as u64;
        Ok(written)
    }

    fn flush(&mut self) -> std::io::Result<()> {
        self.inner.flush()
    }
}

fn push_int(buf: &mut Vec<u8>, v: i64) {
    let mut v = v;
    if v < 0 {
        buf.push(b'-');
        v = -v;
    }
    let mut digits = [0u8; 20];
    let mut i = digits.len();
    loop {
        i -= 1;
        digits[i] = b'0' + (v % 10) as u8;
        v /= 10;
        if v == 0 {
            break;
        }
    }
    buf.extend_from_slice(&digits[i..]);
}

fn write_clause(buf: &mut Vec<u8>, out: &mut impl Write, lits: &[SignedLiteral]) -> std::io::Result<()> {
    buf.clear();
    for &l in lits {
        push_int(buf, l.to_dimacs());
        buf.push(b' ');
    }
    buf.extend_from_slice(b"0\n");
    out.write_all(buf)
}

/// Stream the full instance as DIMACS CNF into `sink` and return the
/// manifest. Blocks are emitted in fixed order: 5-point clauses, 4-set
/// consistency, k-gon exclusion, layer units, wedge units. Comment lines
/// carry the generation parameters so tools can reconstruct the numbering
/// from the file alone.
pub fn emit(
    params: &EncodingParams,
    mode: Cc5Mode,
    template: Option<&HullTemplate>,
    subcube: Option<&SubCube>,
    sink: impl Write,
) -> Result<Manifest> {
    if let (Some(t), Some(s)) = (template, subcube) {
        // re-validate pairing; construction already checked per-layer ranges
        SubCube::new(s.offsets().to_vec(), t)?;
    }
    let numbering = assign_variables(params)?;
    let counts = precount(params, mode, template, subcube)?;

    let hashing = HashingWriter {
        inner: sink,
        hasher: Sha256::new(),
        bytes: 0,
    };
    let mut out = std::io::BufWriter::with_capacity(1 << 20, hashing);

    let emit_io = (|| -> std::io::Result<(u64, u64, u64, u64, u64)> {
        writeln!(out, "c no-convex-{}-gon instance on {} points", params.k(), params.n())?;
        writeln!(out, "c n={} k={} cc5={}", params.n(), params.k(), mode.as_str())?;
        if let Some(t) = template {
            writeln!(out, "c layers={t}")?;
        }
        if let Some(s) = subcube {
            writeln!(out, "c w={s}")?;
        }
        writeln!(out, "p cnf {} {}", numbering.total_vars(), counts.total)?;

        let mut buf: Vec<u8> = Vec::with_capacity(4096);
        let cc5_emitted = cc5_block(&numbering, mode, |cl| write_clause(&mut buf, &mut out, cl))?;
        let fourset_emitted = fourset_block(&numbering, |cl| write_clause(&mut buf, &mut out, cl))?;
        let exclusion_emitted =
            exclusion_block(&numbering, params.k(), |cl| write_clause(&mut buf, &mut out, cl))?;
        Ok((cc5_emitted, fourset_emitted, exclusion_emitted, 0, 0))
    })();
    let (cc5_emitted, fourset_emitted, exclusion_emitted, ..) =
        emit_io.map_err(Error::Emission)?;

    let mut layer_emitted = 0u64;
    let mut wedge_emitted = 0u64;
    let mut buf: Vec<u8> = Vec::with_capacity(64);
    if let Some(t) = template {
        for unit in layer_units(t, params.n())? {
            write_clause(&mut buf, &mut out, &[unit]).map_err(Error::Emission)?;
            layer_emitted += 1;
        }
        if let Some(s) = subcube {
            for unit in wedge_units(t, s, params.n())? {
                write_clause(&mut buf, &mut out, &[unit]).map_err(Error::Emission)?;
                wedge_emitted += 1;
            }
        }
    }

    let hashing = out
        .into_inner()
        .map_err(|e| Error::Emission(e.into_error()))?;
    let mut inner = hashing.inner;
    inner.flush().map_err(Error::Emission)?;
    let digest = hashing.hasher.finalize();
    let sha256 = digest.iter().map(|b| format!("{b:02x}")).collect::<String>();

    for (name, expected, emitted) in [
        ("cc5", counts.cc5, cc5_emitted),
        ("fourset", counts.fourset, fourset_emitted),
        ("exclusion", counts.exclusion, exclusion_emitted),
        ("layer-units", counts.layer_units, layer_emitted),
        ("wedge-units", counts.wedge_units, wedge_emitted),
    ] {
        if expected != emitted {
            return Err(Error::CountMismatch {
                block: name,
                expected,
                emitted,
            });
        }
    }

    Ok(Manifest {
        schema_version: 1,
        n: params.n(),
        k: params.k(),
        cc5_mode: mode.as_str().to_string(),
        layers: template.map(|t| t.sizes().to_vec()),
        subcube: subcube.map(|s| s.offsets().to_vec()),
        variables: VarCounts {
            triples: numbering.triple_count(),
            selectors: numbering.selector_count(),
            total: numbering.total_vars(),
        },
        clauses: counts,
        sha256,
    })
}

/// Parameters recovered from an emitted file's comment header.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedHeader {
    pub params: EncodingParams,
    pub mode: Cc5Mode,
    pub layers: Option<Vec<u32>>,
    pub subcube: Option<Vec<u32>>,
    pub declared_vars: u64,
    pub declared_clauses: u64,
}

/// Read the comment/`p cnf` header of an emitted DIMACS file.
pub fn parse_header(reader: impl std::io::BufRead) -> Result<ParsedHeader> {
    let mut n: Option<u32> = None;
    let mut k: Option<u32> = None;
    let mut mode = Cc5Mode::Reduced;
    let mut layers: Option<Vec<u32>> = None;
    let mut subcube: Option<Vec<u32>> = None;
    for line in reader.lines() {
        let line = line?;
        let line = line.trim();
        if let Some(rest) = line.strip_prefix("c ") {
            for token in rest.split_whitespace() {
                if let Some((key, value)) = token.split_once('=') {
                    match key {
                        "n" => n = Some(parse_num(key, value)?),
                        "k" => k = Some(parse_num(key, value)?),
                        "cc5" => mode = value.parse()?,
                        "layers" => layers = Some(parse_list(key, value)?),
                        "w" => subcube = Some(parse_list(key, value)?),
                        _ => {}
                    }
                }
            }
        } else if let Some(rest) = line.strip_prefix("p cnf ") {
            let mut it = rest.split_whitespace();
            let declared_vars: u64 = it
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| Error::Parse("bad p cnf line".into()))?;
            let declared_clauses: u64 = it
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| Error::Parse("bad p cnf line".into()))?;
            let (n, k) = match (n, k) {
                (Some(n), Some(k)) => (n, k),
                _ => return Err(Error::Parse("header lacks 'c n=.. k=..' line".into())),
            };
            return Ok(ParsedHeader {
                params: EncodingParams::new(n, k)?,
                mode,
                layers,
                subcube,
                declared_vars,
                declared_clauses,
            });
        }
    }
    Err(Error::Parse("no 'p cnf' header found".into()))
}

fn parse_num(key: &str, value: &str) -> Result<u32> {
    value
        .parse()
        .map_err(|_| Error::Parse(format!("bad {key}={value:?} in header")))
}

fn parse_list(key: &str, value: &str) -> Result<Vec<u32>> {
    value
        .split(',')
        .map(|v| v.parse().map_err(|_| Error::Parse(format!("bad {key}={value:?} in header"))))
        .collect()
}
