//! Reference expansions transcribed into small text files.
//!
//! A file is a list of `@key value` headers followed by term lines whose
//! fields are separated by `;`. Coefficients are arithmetic expressions
//! (`sqrt(2)-sqrt(6)`, `2*sqrt(2+sqrt(3))`) evaluated in double precision.
//!
//! ```text
//! @operator creation      creation | number | number_squared | squeeze
//! @t 3
//! @form pauli             pauli: re ; im ; LETTERS
//! @scale 1/8              ladder: weight ; atoms [; erratum]
//! ```
//!
//! Ladder atoms are `Ip`, `Im`, `Sp`, `Sm`. A ladder line tagged `erratum`
//! is known to differ from the recurrence; it is checked to differ and the
//! recurrence's factors are used in its place when the sum is compared.

use std::fmt;
use std::path::Path;

use num_complex::Complex64 as C64;

use crate::encodings::{binary_creation, binary_number, number_squared, squeeze_block};
use crate::error::{Error, Result};
use crate::pauli::{Atom, PauliString, PauliSum};

/// Files shipped with the crate.
pub const EMBEDDED: &[(&str, &str)] = &[
    (
        "creation_t2_ladder.golden",
        include_str!("../golden/creation_t2_ladder.golden"),
    ),
    (
        "creation_t3_ladder.golden",
        include_str!("../golden/creation_t3_ladder.golden"),
    ),
    (
        "creation_t3_pauli.golden",
        include_str!("../golden/creation_t3_pauli.golden"),
    ),
    (
        "creation_t4_ladder.golden",
        include_str!("../golden/creation_t4_ladder.golden"),
    ),
    (
        "creation_t5_ladder.golden",
        include_str!("../golden/creation_t5_ladder.golden"),
    ),
    ("number_t2.golden", include_str!("../golden/number_t2.golden")),
    ("number_t3.golden", include_str!("../golden/number_t3.golden")),
    (
        "number_squared_t3.golden",
        include_str!("../golden/number_squared_t3.golden"),
    ),
    ("squeeze_t3.golden", include_str!("../golden/squeeze_t3.golden")),
];

/// Default per-coefficient tolerance.
pub const GOLDEN_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GoldenOperator {
    Creation,
    Number,
    NumberSquared,
    Squeeze,
}

impl GoldenOperator {
    /// The operator as built by the encoders.
    pub fn build(self, t: usize) -> Result<PauliSum> {
        match self {
            GoldenOperator::Creation => Ok(binary_creation(t)?.operator),
            GoldenOperator::Number => binary_number(t),
            GoldenOperator::NumberSquared => number_squared(t),
            GoldenOperator::Squeeze => squeeze_block(t),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LadderLine {
    pub weight: f64,
    pub atoms: Vec<Atom>,
    pub erratum: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub enum GoldenTerms {
    Pauli(Vec<(PauliString, C64)>),
    Ladder(Vec<LadderLine>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct GoldenFile {
    pub name: String,
    pub operator: GoldenOperator,
    pub t: usize,
    pub scale: f64,
    pub terms: GoldenTerms,
}

/// Evaluate a coefficient expression.
pub fn eval_expr(expr: &str) -> Result<f64> {
    let v = exmex::eval_str::<f64>(expr.trim()).map_err(|e| Error::Parse(format!("`{expr}`: {e}")))?;
    if !v.is_finite() {
        return Err(Error::Parse(format!("`{expr}` is not finite")));
    }
    Ok(v)
}

fn parse_atom(s: &str) -> Result<Atom> {
    match s {
        "Ip" => Ok(Atom::IPlus),
        "Im" => Ok(Atom::IMinus),
        "Sp" => Ok(Atom::SigmaPlus),
        "Sm" => Ok(Atom::SigmaMinus),
        _ => Err(Error::Parse(format!("unknown atom `{s}`"))),
    }
}

impl GoldenFile {
    pub fn parse(name: &str, text: &str) -> Result<Self> {
        let err = |line: usize, m: String| Error::Parse(format!("{name}:{line}: {m}"));
        let mut operator = None;
        let mut t = None;
        let mut form = None;
        let mut scale = 1.0;
        let mut pauli = Vec::new();
        let mut ladder = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let no = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(header) = line.strip_prefix('@') {
                let (key, value) = header
                    .split_once(char::is_whitespace)
                    .ok_or_else(|| err(no, "header without value".into()))?;
                let value = value.trim();
                match key {
                    "operator" => {
                        operator = Some(match value {
                            "creation" => GoldenOperator::Creation,
                            "number" => GoldenOperator::Number,
                            "number_squared" => GoldenOperator::NumberSquared,
                            "squeeze" => GoldenOperator::Squeeze,
                            _ => return Err(err(no, format!("unknown operator `{value}`"))),
                        })
                    }
                    "t" => t = Some(value.parse().map_err(|_| err(no, format!("bad t `{value}`")))?),
                    "form" => form = Some(value.to_string()),
                    "scale" => scale = eval_expr(value).map_err(|e| err(no, e.to_string()))?,
                    _ => return Err(err(no, format!("unknown header `{key}`"))),
                }
                continue;
            }
            let t = t.ok_or_else(|| err(no, "@t must precede terms".into()))?;
            let fields: Vec<&str> = line.split(';').map(str::trim).collect();
            match form.as_deref() {
                Some("pauli") => {
                    let [re, im, letters] = fields[..] else {
                        return Err(err(no, "expected `re ; im ; letters`".into()));
                    };
                    let p: PauliString = letters.parse().map_err(|e: Error| err(no, e.to_string()))?;
                    if p.n_qubits() != t {
                        return Err(err(no, format!("`{letters}` does not have {t} qubits")));
                    }
                    let c = C64::new(
                        eval_expr(re).map_err(|e| err(no, e.to_string()))?,
                        eval_expr(im).map_err(|e| err(no, e.to_string()))?,
                    );
                    pauli.push((p, c));
                }
                Some("ladder") => {
                    let (weight, atoms, erratum) = match fields[..] {
                        [w, a] => (w, a, false),
                        [w, a, "erratum"] => (w, a, true),
                        _ => return Err(err(no, "expected `weight ; atoms [; erratum]`".into())),
                    };
                    let atoms = atoms
                        .split_whitespace()
                        .map(parse_atom)
                        .collect::<Result<Vec<_>>>()
                        .map_err(|e| err(no, e.to_string()))?;
                    if atoms.len() != t {
                        return Err(err(no, format!("expected {t} atoms, got {}", atoms.len())));
                    }
                    ladder.push(LadderLine {
                        weight: eval_expr(weight).map_err(|e| err(no, e.to_string()))?,
                        atoms,
                        erratum,
                    });
                }
                _ => return Err(err(no, "@form must be `pauli` or `ladder` before terms".into())),
            }
        }
        let operator = operator.ok_or_else(|| Error::Parse(format!("{name}: missing @operator")))?;
        let t = t.ok_or_else(|| Error::Parse(format!("{name}: missing @t")))?;
        let terms = match form.as_deref() {
            Some("pauli") => GoldenTerms::Pauli(pauli),
            Some("ladder") => GoldenTerms::Ladder(ladder),
            _ => return Err(Error::Parse(format!("{name}: missing @form"))),
        };
        Ok(GoldenFile {
            name: name.to_string(),
            operator,
            t,
            scale,
            terms,
        })
    }

    /// The printed operator exactly as transcribed, errata included.
    pub fn printed_sum(&self) -> Result<PauliSum> {
        let mut sum = PauliSum::zero(self.t);
        match &self.terms {
            GoldenTerms::Pauli(terms) => {
                for (p, c) in terms {
                    sum = sum.add(&PauliSum::term(*p, *c))?;
                }
            }
            GoldenTerms::Ladder(lines) => {
                for l in lines {
                    sum = sum.add(&PauliSum::product(&l.atoms).scale_real(l.weight))?;
                }
            }
        }
        Ok(sum.scale_real(self.scale))
    }
}

/// Outcome of checking one file.
#[derive(Clone, Debug, PartialEq)]
pub struct GoldenReport {
    pub name: String,
    /// Largest coefficient deviation after errata are replaced.
    pub max_deviation: f64,
    /// Human-readable problems; empty when the file passes.
    pub failures: Vec<String>,
    /// Number of lines tagged as errata.
    pub errata: usize,
}

impl GoldenReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for GoldenReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: max deviation {:.3e}", self.name, self.max_deviation)?;
        if self.errata > 0 {
            write!(f, ", {} erratum line(s) confirmed", self.errata)?;
        }
        for m in &self.failures {
            write!(f, "\n  {m}")?;
        }
        Ok(())
    }
}

/// Compare a golden file with the encoders.
pub fn check(file: &GoldenFile, tol: f64) -> Result<GoldenReport> {
    let built = file.operator.build(file.t)?;
    let mut failures = Vec::new();
    let mut errata = 0;
    let corrected = match &file.terms {
        GoldenTerms::Pauli(_) => file.printed_sum()?,
        GoldenTerms::Ladder(lines) => {
            if file.operator != GoldenOperator::Creation {
                return Err(Error::Parse(format!(
                    "{}: ladder form is only defined for `creation`",
                    file.name
                )));
            }
            let components = binary_creation(file.t)?.components;
            if lines.len() != components.len() {
                failures.push(format!(
                    "{} lines, recurrence has {} components",
                    lines.len(),
                    components.len()
                ));
            }
            let mut sum = PauliSum::zero(file.t);
            for (k, (line, comp)) in lines.iter().zip(&components).enumerate() {
                let index = k + 1;
                if (line.weight - comp.weight()).abs() > tol {
                    failures.push(format!("line {index}: weight {} is not sqrt({index})", line.weight));
                }
                let same = line.atoms == comp.factors;
                match (line.erratum, same) {
                    (false, false) => failures.push(format!("line {index}: factors differ from the recurrence")),
                    (true, true) => failures.push(format!("line {index}: tagged erratum but matches the recurrence")),
                    (true, false) => errata += 1,
                    (false, true) => {}
                }
                sum = sum.add(&comp.operator().scale_real(line.weight))?;
            }
            sum.scale_real(file.scale)
        }
    };
    let max_deviation = corrected.max_coeff_diff(&built)?;
    if max_deviation > tol {
        failures.push(format!("coefficient deviation {max_deviation:.3e} exceeds {tol:.0e}"));
    }
    Ok(GoldenReport {
        name: file.name.clone(),
        max_deviation,
        failures,
        errata,
    })
}

/// Parse the embedded files.
pub fn embedded() -> Result<Vec<GoldenFile>> {
    EMBEDDED.iter().map(|(n, text)| GoldenFile::parse(n, text)).collect()
}

/// Parse every `*.golden` file in `dir`, sorted by name.
pub fn load_dir(dir: &Path) -> std::io::Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    for entry in std::fs::read_dir(dir)? {
        let path = entry?.path();
        if path.extension().is_some_and(|e| e == "golden") {
            let name = path.file_name().unwrap_or_default().to_string_lossy().into_owned();
            out.push((name, std::fs::read_to_string(&path)?));
        }
    }
    out.sort();
    Ok(out)
}
