//! Binary and JSON layouts for symbols and matrices.
//!
//! Binary layout (little endian):
//!
//! | field       | type            | notes                                   |
//! |-------------|-----------------|-----------------------------------------|
//! | magic       | 4 bytes         | `SYMG` (symbol) or `MATO` (matrix)      |
//! | version     | u16             | 1                                       |
//! | dimension   | u8              | n ∈ {1, 2}                              |
//! | topology    | u8              | 0 integer, 1 sampled box, 2 cyclic      |
//! | half_width  | u64             | N                                       |
//! | spacing     | f64             | h                                       |
//! | label_len   | u32             | byte length of the label                |
//! | label       | UTF-8 bytes     |                                         |
//! | has_mask    | u8              | `SYMG` only; 0 or 1                     |
//! | mask        | len² bytes      | `SYMG` only, present if has_mask = 1    |
//! | payload     | len² × 2 × f64  | row-major `(re, im)` pairs              |
//!
//! `len` is the lattice point count. The JSON forms carry the same fields.

use std::path::Path;

use faer::Mat;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{Lattice, Topology};
use crate::linalg::C64;
use crate::symbol::{MatrixOperator, SymbolGrid};

pub const SYMBOL_MAGIC: &[u8; 4] = b"SYMG";
pub const MATRIX_MAGIC: &[u8; 4] = b"MATO";
pub const FORMAT_VERSION: u16 = 1;

struct Header {
    lattice: Lattice,
    label: String,
}

fn write_header(out: &mut Vec<u8>, magic: &[u8; 4], lattice: &Lattice, label: &str) {
    out.extend_from_slice(magic);
    out.extend_from_slice(&FORMAT_VERSION.to_le_bytes());
    out.push(lattice.dimension() as u8);
    out.push(lattice.topology().code());
    out.extend_from_slice(&(lattice.half_width() as u64).to_le_bytes());
    out.extend_from_slice(&lattice.spacing().to_le_bytes());
    out.extend_from_slice(&(label.len() as u32).to_le_bytes());
    out.extend_from_slice(label.as_bytes());
}

fn write_payload(out: &mut Vec<u8>, values: &Mat<C64>) {
    for i in 0..values.nrows() {
        for j in 0..values.ncols() {
            out.extend_from_slice(&values[(i, j)].re.to_le_bytes());
            out.extend_from_slice(&values[(i, j)].im.to_le_bytes());
        }
    }
}

struct Reader<'a> {
    bytes: &'a [u8],
    at: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        let end = self
            .at
            .checked_add(n)
            .filter(|&e| e <= self.bytes.len())
            .ok_or_else(|| {
                Error::Format(format!(
                    "truncated input at byte {} (wanted {n} more)",
                    self.at
                ))
            })?;
        let s = &self.bytes[self.at..end];
        self.at = end;
        Ok(s)
    }

    fn array<const K: usize>(&mut self) -> Result<[u8; K]> {
        Ok(self.take(K)?.try_into().expect("length checked"))
    }

    fn u8(&mut self) -> Result<u8> {
        Ok(self.take(1)?[0])
    }

    fn header(&mut self, magic: &[u8; 4]) -> Result<Header> {
        let m = self.array::<4>()?;
        if &m != magic {
            return Err(Error::Format(format!(
                "bad magic {:?}, expected {:?}",
                String::from_utf8_lossy(&m),
                String::from_utf8_lossy(magic)
            )));
        }
        let version = u16::from_le_bytes(self.array()?);
        if version != FORMAT_VERSION {
            return Err(Error::Format(format!("unsupported version {version}")));
        }
        let dimension = self.u8()? as usize;
        let code = self.u8()?;
        let topology = Topology::from_code(code)
            .ok_or_else(|| Error::Format(format!("bad topology code {code}")))?;
        let half_width = u64::from_le_bytes(self.array()?);
        let spacing = f64::from_le_bytes(self.array()?);
        let label_len = u32::from_le_bytes(self.array()?) as usize;
        let label = std::str::from_utf8(self.take(label_len)?)
            .map_err(|e| Error::Format(format!("label is not UTF-8: {e}")))?
            .to_string();
        let half_width = usize::try_from(half_width)
            .map_err(|_| Error::Format(format!("half-width {half_width} too large")))?;
        let lattice = Lattice::new(dimension, half_width, spacing, topology)?;
        Ok(Header { lattice, label })
    }

    fn payload(&mut self, n: usize) -> Result<Mat<C64>> {
        let mut values = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let re = f64::from_le_bytes(self.array()?);
                let im = f64::from_le_bytes(self.array()?);
                values[(i, j)] = C64::new(re, im);
            }
        }
        Ok(values)
    }

    fn finish(&self) -> Result<()> {
        if self.at == self.bytes.len() {
            Ok(())
        } else {
            Err(Error::Format(format!(
                "{} trailing bytes",
                self.bytes.len() - self.at
            )))
        }
    }
}

pub fn symbol_to_bytes(m: &SymbolGrid) -> Vec<u8> {
    let mut out = Vec::new();
    write_header(&mut out, SYMBOL_MAGIC, m.lattice(), m.label());
    match m.mask() {
        Some(mask) => {
            out.push(1);
            out.extend(mask.iter().map(|&v| v as u8));
        }
        None => out.push(0),
    }
    write_payload(&mut out, &m.values().to_owned());
    out
}

pub fn symbol_from_bytes(bytes: &[u8]) -> Result<SymbolGrid> {
    let mut r = Reader { bytes, at: 0 };
    let h = r.header(SYMBOL_MAGIC)?;
    let n = h.lattice.len();
    let mask = match r.u8()? {
        0 => None,
        1 => Some(
            r.take(n * n)?
                .iter()
                .map(|&b| b != 0)
                .collect::<Vec<bool>>(),
        ),
        f => return Err(Error::Format(format!("bad mask flag {f}"))),
    };
    let values = r.payload(n)?;
    r.finish()?;
    let m = SymbolGrid::new(h.lattice, values, h.label)?;
    Ok(match mask {
        Some(mask) => m.with_mask(mask),
        None => m,
    })
}

pub fn operator_to_bytes(a: &MatrixOperator) -> Vec<u8> {
    let mut out = Vec::new();
    write_header(&mut out, MATRIX_MAGIC, a.lattice(), a.label());
    write_payload(&mut out, &a.entries().to_owned());
    out
}

pub fn operator_from_bytes(bytes: &[u8]) -> Result<MatrixOperator> {
    let mut r = Reader { bytes, at: 0 };
    let h = r.header(MATRIX_MAGIC)?;
    let values = r.payload(h.lattice.len())?;
    r.finish()?;
    MatrixOperator::new(h.lattice, values, h.label)
}

#[derive(Serialize, Deserialize)]
struct LatticeJson {
    dimension: usize,
    half_width: usize,
    spacing: f64,
    topology: Topology,
}

/// JSON debug form: `values` is row-major `[re, im]` pairs.
#[derive(Serialize, Deserialize)]
struct GridJson {
    lattice: LatticeJson,
    label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    mask: Option<Vec<bool>>,
    values: Vec<[f64; 2]>,
}

fn lattice_json(l: &Lattice) -> LatticeJson {
    LatticeJson {
        dimension: l.dimension(),
        half_width: l.half_width(),
        spacing: l.spacing(),
        topology: l.topology(),
    }
}

fn grid_json(
    l: &Lattice,
    label: &str,
    mask: Option<&[bool]>,
    values: faer::MatRef<'_, C64>,
) -> GridJson {
    let n = l.len();
    GridJson {
        lattice: lattice_json(l),
        label: label.to_string(),
        mask: mask.map(<[bool]>::to_vec),
        values: (0..n * n)
            .map(|k| {
                let v = values[(k / n, k % n)];
                [v.re, v.im]
            })
            .collect(),
    }
}

type ParsedGrid = (Lattice, String, Option<Vec<bool>>, Mat<C64>);

fn parse_grid(text: &str) -> Result<ParsedGrid> {
    let g: GridJson = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    let l = Lattice::new(
        g.lattice.dimension,
        g.lattice.half_width,
        g.lattice.spacing,
        g.lattice.topology,
    )?;
    let n = l.len();
    if g.values.len() != n * n {
        return Err(Error::Format(format!(
            "{} values for {n} points",
            g.values.len()
        )));
    }
    if g.mask.as_ref().is_some_and(|m| m.len() != n * n) {
        return Err(Error::Format(
            "mask length does not match the lattice".into(),
        ));
    }
    let values = Mat::from_fn(n, n, |i, j| {
        let [re, im] = g.values[i * n + j];
        C64::new(re, im)
    });
    Ok((l, g.label, g.mask, values))
}

pub fn symbol_to_json(m: &SymbolGrid) -> String {
    serde_json::to_string_pretty(&grid_json(m.lattice(), m.label(), m.mask(), m.values()))
        .expect("symbol JSON")
}

pub fn symbol_from_json(text: &str) -> Result<SymbolGrid> {
    let (l, label, mask, values) = parse_grid(text)?;
    let m = SymbolGrid::new(l, values, label)?;
    Ok(match mask {
        Some(mask) => m.with_mask(mask),
        None => m,
    })
}

pub fn operator_to_json(a: &MatrixOperator) -> String {
    serde_json::to_string_pretty(&grid_json(a.lattice(), a.label(), None, a.entries()))
        .expect("operator JSON")
}

pub fn operator_from_json(text: &str) -> Result<MatrixOperator> {
    let (l, label, mask, values) = parse_grid(text)?;
    if mask.is_some() {
        return Err(Error::Format("matrices carry no mask".into()));
    }
    MatrixOperator::new(l, values, label)
}

fn read(path: &Path) -> Result<Vec<u8>> {
    std::fs::read(path).map_err(|e| Error::io(path, e))
}

pub fn write_bytes(path: &Path, bytes: &[u8]) -> Result<()> {
    std::fs::write(path, bytes).map_err(|e| Error::io(path, e))
}

/// Load a symbol from `path`: binary if it starts with `SYMG`, JSON otherwise.
pub fn load_symbol(path: &Path) -> Result<SymbolGrid> {
    let bytes = read(path)?;
    if bytes.starts_with(SYMBOL_MAGIC) {
        symbol_from_bytes(&bytes)
    } else {
        symbol_from_json(std::str::from_utf8(&bytes).map_err(|e| Error::Format(e.to_string()))?)
    }
}

/// Load a matrix from `path`: binary if it starts with `MATO`, JSON otherwise.
pub fn load_operator(path: &Path) -> Result<MatrixOperator> {
    let bytes = read(path)?;
    if bytes.starts_with(MATRIX_MAGIC) {
        operator_from_bytes(&bytes)
    } else {
        operator_from_json(std::str::from_utf8(&bytes).map_err(|e| Error::Format(e.to_string()))?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbol::row_col_symbols;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn symbols() -> Vec<SymbolGrid> {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let box2 = Lattice::new(2, 2, 0.25, Topology::SampledBox).unwrap();
        let random = SymbolGrid::random(&box2, &mut rng)
            .unwrap()
            .relabel("rändom");
        let (masked, _) = row_col_symbols(&random).unwrap();
        let cyc = SymbolGrid::random(&Lattice::cyclic(7).unwrap(), &mut rng).unwrap();
        vec![random, masked, cyc]
    }

    #[test]
    fn binary_round_trip() {
        for m in symbols() {
            let bytes = symbol_to_bytes(&m);
            assert_eq!(&bytes[..4], b"SYMG");
            assert_eq!(symbol_from_bytes(&bytes).unwrap(), m);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let a = MatrixOperator::random(&Lattice::integer(3).unwrap(), &mut rng).unwrap();
        assert_eq!(operator_from_bytes(&operator_to_bytes(&a)).unwrap(), a);
    }

    #[test]
    fn json_round_trip() {
        for m in symbols() {
            assert_eq!(symbol_from_json(&symbol_to_json(&m)).unwrap(), m);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let a = MatrixOperator::random(&Lattice::cyclic(5).unwrap(), &mut rng).unwrap();
        assert_eq!(operator_from_json(&operator_to_json(&a)).unwrap(), a);
    }

    #[test]
    fn header_layout() {
        let m = SymbolGrid::constant(&Lattice::cyclic(2).unwrap(), C64::new(1.5, -2.0)).unwrap();
        let b = symbol_to_bytes(&m.relabel("ab"));
        assert_eq!(&b[4..6], &[1, 0]);
        assert_eq!(b[6], 1);
        assert_eq!(b[7], 2);
        assert_eq!(u64::from_le_bytes(b[8..16].try_into().unwrap()), 2);
        assert_eq!(f64::from_le_bytes(b[16..24].try_into().unwrap()), 1.0);
        assert_eq!(u32::from_le_bytes(b[24..28].try_into().unwrap()), 2);
        assert_eq!(&b[28..30], b"ab");
        assert_eq!(b[30], 0);
        assert_eq!(b.len(), 31 + 4 * 16);
        assert_eq!(f64::from_le_bytes(b[31..39].try_into().unwrap()), 1.5);
        assert_eq!(f64::from_le_bytes(b[39..47].try_into().unwrap()), -2.0);
    }

    #[test]
    fn malformed_inputs() {
        let m = SymbolGrid::constant(&Lattice::cyclic(3).unwrap(), C64::new(1.0, 0.0)).unwrap();
        let b = symbol_to_bytes(&m);
        assert!(matches!(
            symbol_from_bytes(&b[..b.len() - 1]),
            Err(Error::Format(_))
        ));
        let mut extra = b.clone();
        extra.push(0);
        assert!(matches!(symbol_from_bytes(&extra), Err(Error::Format(_))));
        assert!(matches!(operator_from_bytes(&b), Err(Error::Format(_))));
        let mut nan = b.clone();
        let at = nan.len() - 8;
        nan[at..].copy_from_slice(&f64::NAN.to_le_bytes());
        assert!(matches!(
            symbol_from_bytes(&nan),
            Err(Error::NonFinite { .. })
        ));
        assert!(symbol_from_json("{\"label\": 1}").is_err());
    }

    #[test]
    fn files() {
        let dir = tempfile::tempdir().unwrap();
        let m = &symbols()[1];
        let bin = dir.path().join("m.symg");
        let json = dir.path().join("m.json");
        write_bytes(&bin, &symbol_to_bytes(m)).unwrap();
        write_bytes(&json, symbol_to_json(m).as_bytes()).unwrap();
        assert_eq!(&load_symbol(&bin).unwrap(), m);
        assert_eq!(&load_symbol(&json).unwrap(), m);
        assert!(matches!(
            load_symbol(&dir.path().join("missing")),
            Err(Error::Io { .. })
        ));
    }
}
