//! JSON machine files for every machine kind.
//!
//! States, registers and tape symbols are referenced by name. Rationals are
//! `"p/q"` strings; QFT phases stay symbolic as `{"N", "j", "l"}` objects.
//! Serializing a loaded file reproduces it byte for byte.

use std::collections::HashMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::alphabet::{Alphabet, TapeSymbol};
use crate::bca::{BcaMove, DetBca, NondetBca};
use crate::error::{Error, Result};
use crate::gfa::Gfa;
use crate::languages::LanguageId;
use crate::multihead::{KfaOutcome, KfaRule, KfaState, OneWayKfa, PbcaBranch, ProbBca, Verdict};
use crate::numerics::{format_rational, parse_rational, Rational, SparseMap, SparseVector};
use crate::qruntime::{
    Amp, MoveTag, Outcome, QMachineSpec, QMode, QState, QTransition, RegisterSymbol,
};

/// Any machine the harness can load, run and sweep.
#[derive(Clone, Debug, PartialEq)]
pub enum Machine {
    Gfa(Gfa),
    Quantum(QMachineSpec),
    Dbca(DetBca),
    Nbca(NondetBca),
    Pbca(ProbBca),
    Pkfa(OneWayKfa),
}

impl Machine {
    /// The `kind` tag used in machine files.
    pub fn kind(&self) -> &'static str {
        match self {
            Machine::Gfa(_) => "gfa",
            Machine::Quantum(q) => match q.mode() {
                QMode::OneWay => "qfa_oneway",
                QMode::Realtime { .. } => "qbca_realtime",
            },
            Machine::Dbca(_) => "dbca",
            Machine::Nbca(_) => "nbca",
            Machine::Pbca(_) => "pbca",
            Machine::Pkfa(_) => "pkfa",
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        match self {
            Machine::Gfa(g) => g.alphabet(),
            Machine::Quantum(q) => q.alphabet(),
            Machine::Dbca(m) => m.alphabet(),
            Machine::Nbca(m) => m.alphabet(),
            Machine::Pbca(m) => m.alphabet(),
            Machine::Pkfa(m) => m.alphabet(),
        }
    }

    pub fn state_count(&self) -> usize {
        match self {
            Machine::Gfa(g) => g.states(),
            Machine::Quantum(q) => q.states().len(),
            Machine::Dbca(m) => m.states().len(),
            Machine::Nbca(m) => m.states().len(),
            Machine::Pbca(m) => m.states().len(),
            Machine::Pkfa(m) => m.states().len(),
        }
    }

    /// Number of nonzero matrix entries, transition terms or rule outcomes.
    pub fn transition_count(&self) -> usize {
        match self {
            Machine::Gfa(g) => (0..g.alphabet().len()).map(|s| g.transition(s).nnz()).sum(),
            Machine::Quantum(q) => q.transition_count(),
            Machine::Dbca(m) => m.delta().iter().map(Vec::len).sum(),
            Machine::Nbca(m) => m.delta().iter().flatten().map(Vec::len).sum(),
            Machine::Pbca(m) => m.delta().iter().flatten().map(Vec::len).sum(),
            Machine::Pkfa(m) => m
                .states()
                .iter()
                .flat_map(|s| &s.rules)
                .map(|r| r.outcomes.len())
                .sum(),
        }
    }
}

/// A machine plus the language it is meant to recognize, if known.
#[derive(Clone, Debug, PartialEq)]
pub struct MachineDoc {
    pub machine: Machine,
    pub language: Option<LanguageId>,
}

impl MachineDoc {
    pub fn new(machine: Machine, language: Option<LanguageId>) -> Self {
        Self { machine, language }
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> Result<String> {
        let mut text = serde_json::to_string_pretty(&encode(self))?;
        text.push('\n');
        Ok(text)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: FileBody =
            serde_json::from_str(text).map_err(|e| Error::parse(format!("machine file: {e}")))?;
        decode(file)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text).map_err(|e| match e {
            Error::Parse(msg) => Error::parse(format!("{}: {msg}", path.display())),
            other => Error::parse(format!("{}: {other}", path.display())),
        })
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()?)?;
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum FileBody {
    Gfa(GfaFile),
    QfaOneway(QuantumFile),
    QbcaRealtime(QuantumFile),
    Dbca(DbcaFile),
    Nbca(NbcaFile),
    Pbca(PbcaFile),
    Pkfa(PkfaFile),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GfaFile {
    alphabet: Alphabet,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    language: Option<String>,
    states: usize,
    initial: Vec<VectorEntry>,
    #[serde(rename = "final")]
    final_row: Vec<VectorEntry>,
    transitions: Vec<MatrixEntry>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VectorEntry {
    state: usize,
    value: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixEntry {
    symbol: String,
    source: usize,
    target: usize,
    value: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct QuantumFile {
    alphabet: Alphabet,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    language: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    counters: Option<usize>,
    states: Vec<QStateFile>,
    registers: Vec<RegisterFile>,
    transitions: Vec<QTransitionFile>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct QStateFile {
    name: String,
    #[serde(rename = "move")]
    tag: MoveTag,
    accepting: bool,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RegisterFile {
    name: String,
    class: Outcome,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct QTransitionFile {
    source: String,
    symbol: String,
    amplitude: AmpFile,
    target: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    update: Vec<i64>,
    register: String,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum AmpFile {
    Real(String),
    Complex {
        re: String,
        im: String,
    },
    Qft {
        #[serde(rename = "N")]
        n: usize,
        j: i64,
        l: i64,
    },
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NamedState {
    name: String,
    accepting: bool,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DbcaFile {
    alphabet: Alphabet,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    language: Option<String>,
    counters: usize,
    states: Vec<NamedState>,
    transitions: Vec<DbcaTransition>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DbcaTransition {
    source: String,
    symbol: String,
    target: String,
    update: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NbcaFile {
    alphabet: Alphabet,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    language: Option<String>,
    states: Vec<NamedState>,
    transitions: Vec<CounterTransition>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CounterTransition {
    source: String,
    symbol: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    probability: Option<String>,
    target: String,
    update: i64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PbcaFile {
    alphabet: Alphabet,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    language: Option<String>,
    states: Vec<NamedState>,
    transitions: Vec<CounterTransition>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PkfaFile {
    alphabet: Alphabet,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    language: Option<String>,
    heads: usize,
    states: Vec<PkfaStateFile>,
    transitions: Vec<PkfaRuleFile>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PkfaStateFile {
    name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    verdict: Option<Verdict>,
}

/// Rules of a state are tried in file order; `"*"` matches any symbol.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PkfaRuleFile {
    source: String,
    pattern: Vec<String>,
    outcomes: Vec<PkfaOutcomeFile>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PkfaOutcomeFile {
    probability: String,
    target: String,
    moves: Vec<u8>,
}

const WILDCARD: &str = "*";

fn encode(doc: &MachineDoc) -> FileBody {
    let language = doc.language.map(|l| l.to_string());
    match &doc.machine {
        Machine::Gfa(g) => {
            let a = g.alphabet();
            let vector = |v: &SparseVector<usize, Rational>| {
                v.iter()
                    .map(|(&state, x)| VectorEntry {
                        state,
                        value: format_rational(x),
                    })
                    .collect()
            };
            let transitions = (0..a.len())
                .flat_map(|s| {
                    g.transition(s)
                        .entries()
                        .map(move |(&target, &source, x)| MatrixEntry {
                            symbol: a.symbol(s).to_string(),
                            source,
                            target,
                            value: format_rational(x),
                        })
                })
                .collect();
            FileBody::Gfa(GfaFile {
                alphabet: a.clone(),
                language,
                states: g.states(),
                initial: vector(g.initial()),
                final_row: vector(g.final_row()),
                transitions,
            })
        }
        Machine::Quantum(q) => {
            let a = q.alphabet();
            let name = |i: usize| q.states()[i].name.clone();
            let mut transitions = Vec::new();
            for (src, row) in q.delta().iter().enumerate() {
                for (sym, terms) in a.tape_symbols().into_iter().zip(row) {
                    for t in terms {
                        transitions.push(QTransitionFile {
                            source: name(src),
                            symbol: a.render_tape(sym).to_string(),
                            amplitude: encode_amp(&t.amp),
                            target: name(t.target),
                            update: t.update.clone(),
                            register: q.registers()[t.register].name.clone(),
                        });
                    }
                }
            }
            let file = QuantumFile {
                alphabet: a.clone(),
                language,
                counters: match q.mode() {
                    QMode::OneWay => None,
                    QMode::Realtime { counters } => Some(counters),
                },
                states: q
                    .states()
                    .iter()
                    .map(|s| QStateFile {
                        name: s.name.clone(),
                        tag: s.tag,
                        accepting: s.accepting,
                    })
                    .collect(),
                registers: q
                    .registers()
                    .iter()
                    .map(|r| RegisterFile {
                        name: r.name.clone(),
                        class: r.class,
                    })
                    .collect(),
                transitions,
            };
            match q.mode() {
                QMode::OneWay => FileBody::QfaOneway(file),
                QMode::Realtime { .. } => FileBody::QbcaRealtime(file),
            }
        }
        Machine::Dbca(m) => {
            let a = m.alphabet();
            let mut transitions = Vec::new();
            for (src, row) in m.delta().iter().enumerate() {
                for (sym, mv) in a.tape_symbols().into_iter().zip(row) {
                    transitions.push(DbcaTransition {
                        source: m.states()[src].clone(),
                        symbol: a.render_tape(sym).to_string(),
                        target: m.states()[mv.target].clone(),
                        update: mv.update.clone(),
                    });
                }
            }
            FileBody::Dbca(DbcaFile {
                alphabet: a.clone(),
                language,
                counters: m.counters(),
                states: named_states(m.states(), |q| m.accepting().contains(&q)),
                transitions,
            })
        }
        Machine::Nbca(m) => {
            let a = m.alphabet();
            let mut transitions = Vec::new();
            for (src, row) in m.delta().iter().enumerate() {
                for (sym, choices) in a.tape_symbols().into_iter().zip(row) {
                    for &(target, update) in choices {
                        transitions.push(CounterTransition {
                            source: m.states()[src].clone(),
                            symbol: a.render_tape(sym).to_string(),
                            probability: None,
                            target: m.states()[target].clone(),
                            update,
                        });
                    }
                }
            }
            FileBody::Nbca(NbcaFile {
                alphabet: a.clone(),
                language,
                states: named_states(m.states(), |q| m.accepting().contains(&q)),
                transitions,
            })
        }
        Machine::Pbca(m) => {
            let a = m.alphabet();
            let mut transitions = Vec::new();
            for (src, row) in m.delta().iter().enumerate() {
                for (sym, dist) in a.tape_symbols().into_iter().zip(row) {
                    for (p, target, update) in dist {
                        transitions.push(CounterTransition {
                            source: m.states()[src].clone(),
                            symbol: a.render_tape(sym).to_string(),
                            probability: Some(format_rational(p)),
                            target: m.states()[*target].clone(),
                            update: *update,
                        });
                    }
                }
            }
            FileBody::Pbca(PbcaFile {
                alphabet: a.clone(),
                language,
                states: named_states(m.states(), |q| m.accepting().contains(&q)),
                transitions,
            })
        }
        Machine::Pkfa(m) => {
            let a = m.alphabet();
            let name = |i: usize| m.states()[i].name.clone();
            let transitions = m
                .states()
                .iter()
                .flat_map(|s| s.rules.iter().map(move |r| (s, r)))
                .map(|(s, r)| PkfaRuleFile {
                    source: s.name.clone(),
                    pattern: r
                        .pattern
                        .iter()
                        .map(|p| {
                            p.map_or(WILDCARD.to_string(), |sym| a.render_tape(sym).to_string())
                        })
                        .collect(),
                    outcomes: r
                        .outcomes
                        .iter()
                        .map(|o| PkfaOutcomeFile {
                            probability: format_rational(&o.probability),
                            target: name(o.target),
                            moves: o.moves.iter().map(|&m| u8::from(m)).collect(),
                        })
                        .collect(),
                })
                .collect();
            FileBody::Pkfa(PkfaFile {
                alphabet: a.clone(),
                language,
                heads: m.heads(),
                states: m
                    .states()
                    .iter()
                    .map(|s| PkfaStateFile {
                        name: s.name.clone(),
                        verdict: s.verdict,
                    })
                    .collect(),
                transitions,
            })
        }
    }
}

fn named_states(names: &[String], accepting: impl Fn(usize) -> bool) -> Vec<NamedState> {
    names
        .iter()
        .enumerate()
        .map(|(q, n)| NamedState {
            name: n.clone(),
            accepting: accepting(q),
        })
        .collect()
}

fn encode_amp(amp: &Amp) -> AmpFile {
    use num::Zero;
    match amp {
        Amp::Exact { re, im } if im.is_zero() => AmpFile::Real(format_rational(re)),
        Amp::Exact { re, im } => AmpFile::Complex {
            re: format_rational(re),
            im: format_rational(im),
        },
        Amp::Qft { n, j, l } => AmpFile::Qft {
            n: *n,
            j: *j,
            l: *l,
        },
    }
}

fn decode_amp(amp: AmpFile) -> Result<Amp> {
    Ok(match amp {
        AmpFile::Real(re) => Amp::real(parse_rational(&re)?),
        AmpFile::Complex { re, im } => Amp::Exact {
            re: parse_rational(&re)?,
            im: parse_rational(&im)?,
        },
        AmpFile::Qft { n, j, l } => {
            if n == 0 {
                return Err(Error::parse("QFT amplitude needs N >= 1"));
            }
            Amp::qft(n, j, l)
        }
    })
}

/// Name lookup for states or registers.
struct Names(HashMap<String, usize>, &'static str);

impl Names {
    fn new<'a>(names: impl IntoIterator<Item = &'a String>, what: &'static str) -> Result<Self> {
        let mut map = HashMap::new();
        for (i, n) in names.into_iter().enumerate() {
            if map.insert(n.clone(), i).is_some() {
                return Err(Error::parse(format!("duplicate {what} {n:?}")));
            }
        }
        Ok(Self(map, what))
    }

    fn get(&self, name: &str) -> Result<usize> {
        self.0
            .get(name)
            .copied()
            .ok_or_else(|| Error::parse(format!("unknown {} {name:?}", self.1)))
    }
}

fn parse_language(language: Option<String>) -> Result<Option<LanguageId>> {
    language.map(|l| l.parse()).transpose()
}

fn table<T: Clone>(states: usize, alphabet: &Alphabet) -> Vec<Vec<Vec<T>>> {
    vec![vec![Vec::new(); alphabet.len() + 2]; states]
}

fn decode(file: FileBody) -> Result<MachineDoc> {
    match file {
        FileBody::Gfa(f) => {
            let vector = |entries: Vec<VectorEntry>| -> Result<SparseVector<usize, Rational>> {
                entries
                    .into_iter()
                    .map(|e| Ok((e.state, parse_rational(&e.value)?)))
                    .collect()
            };
            let mut matrices = vec![SparseMap::new(); f.alphabet.len()];
            for e in f.transitions {
                let sym = f
                    .alphabet
                    .index_of(&e.symbol)
                    .ok_or_else(|| Error::parse(format!("unknown symbol {:?}", e.symbol)))?;
                matrices[sym].add(e.target, e.source, parse_rational(&e.value)?);
            }
            let g = Gfa::new(
                f.alphabet,
                f.states,
                matrices,
                vector(f.initial)?,
                vector(f.final_row)?,
            )?;
            Ok(MachineDoc::new(
                Machine::Gfa(g),
                parse_language(f.language)?,
            ))
        }
        FileBody::QfaOneway(f) => decode_quantum(f, false),
        FileBody::QbcaRealtime(f) => decode_quantum(f, true),
        FileBody::Dbca(f) => {
            let names: Vec<String> = f.states.iter().map(|s| s.name.clone()).collect();
            let index = Names::new(&names, "state")?;
            let mut cells: Vec<Vec<Vec<BcaMove>>> = table(names.len(), &f.alphabet);
            for t in f.transitions {
                let sym = f.alphabet.tape_index(f.alphabet.parse_tape(&t.symbol)?);
                cells[index.get(&t.source)?][sym]
                    .push(BcaMove::new(index.get(&t.target)?, t.update));
            }
            let mut delta = Vec::with_capacity(names.len());
            for (q, row) in cells.into_iter().enumerate() {
                let mut out = Vec::with_capacity(row.len());
                for (i, mut cell) in row.into_iter().enumerate() {
                    if cell.len() != 1 {
                        return Err(Error::parse(format!(
                            "state {:?} needs exactly one transition on {:?}, found {}",
                            names[q],
                            f.alphabet.render_tape(f.alphabet.tape_symbols()[i]),
                            cell.len()
                        )));
                    }
                    out.push(cell.remove(0));
                }
                delta.push(out);
            }
            let accepting = accepting_indices(&f.states);
            let m = DetBca::new(f.alphabet, names, accepting, f.counters, delta)?;
            Ok(MachineDoc::new(
                Machine::Dbca(m),
                parse_language(f.language)?,
            ))
        }
        FileBody::Nbca(f) => {
            let names: Vec<String> = f.states.iter().map(|s| s.name.clone()).collect();
            let index = Names::new(&names, "state")?;
            let mut delta: Vec<Vec<Vec<(usize, i64)>>> = table(names.len(), &f.alphabet);
            for t in f.transitions {
                if t.probability.is_some() {
                    return Err(Error::parse(
                        "nondeterministic transitions carry no probability",
                    ));
                }
                let sym = f.alphabet.tape_index(f.alphabet.parse_tape(&t.symbol)?);
                delta[index.get(&t.source)?][sym].push((index.get(&t.target)?, t.update));
            }
            let m = NondetBca::new(f.alphabet, names, accepting_indices(&f.states), delta)?;
            Ok(MachineDoc::new(
                Machine::Nbca(m),
                parse_language(f.language)?,
            ))
        }
        FileBody::Pbca(f) => {
            let names: Vec<String> = f.states.iter().map(|s| s.name.clone()).collect();
            let index = Names::new(&names, "state")?;
            let mut delta: Vec<Vec<Vec<PbcaBranch>>> = table(names.len(), &f.alphabet);
            for t in f.transitions {
                let p = t
                    .probability
                    .ok_or_else(|| Error::parse("probabilistic transition without probability"))?;
                let sym = f.alphabet.tape_index(f.alphabet.parse_tape(&t.symbol)?);
                delta[index.get(&t.source)?][sym].push((
                    parse_rational(&p)?,
                    index.get(&t.target)?,
                    t.update,
                ));
            }
            let m = ProbBca::new(f.alphabet, names, accepting_indices(&f.states), delta)?;
            Ok(MachineDoc::new(
                Machine::Pbca(m),
                parse_language(f.language)?,
            ))
        }
        FileBody::Pkfa(f) => {
            let index = Names::new(f.states.iter().map(|s| &s.name), "state")?;
            let mut states: Vec<KfaState> = f
                .states
                .iter()
                .map(|s| KfaState {
                    name: s.name.clone(),
                    verdict: s.verdict,
                    rules: Vec::new(),
                })
                .collect();
            for r in f.transitions {
                let pattern = r
                    .pattern
                    .iter()
                    .map(|p| {
                        if p == WILDCARD {
                            Ok(None)
                        } else {
                            f.alphabet.parse_tape(p).map(Some)
                        }
                    })
                    .collect::<Result<Vec<Option<TapeSymbol>>>>()?;
                let outcomes = r
                    .outcomes
                    .into_iter()
                    .map(|o| {
                        if o.moves.iter().any(|&m| m > 1) {
                            return Err(Error::parse("head moves must be 0 or 1"));
                        }
                        Ok(KfaOutcome {
                            probability: parse_rational(&o.probability)?,
                            target: index.get(&o.target)?,
                            moves: o.moves.iter().map(|&m| m == 1).collect(),
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                states[index.get(&r.source)?]
                    .rules
                    .push(KfaRule { pattern, outcomes });
            }
            let m = OneWayKfa::new(f.alphabet, f.heads, states)?;
            Ok(MachineDoc::new(
                Machine::Pkfa(m),
                parse_language(f.language)?,
            ))
        }
    }
}

fn accepting_indices(states: &[NamedState]) -> Vec<usize> {
    states
        .iter()
        .enumerate()
        .filter(|(_, s)| s.accepting)
        .map(|(q, _)| q)
        .collect()
}

fn decode_quantum(f: QuantumFile, realtime: bool) -> Result<MachineDoc> {
    let mode = match (realtime, f.counters) {
        (true, Some(counters)) => QMode::Realtime { counters },
        (false, None) => QMode::OneWay,
        (true, None) => return Err(Error::parse("realtime machine needs a counter count")),
        (false, Some(_)) => return Err(Error::parse("one-way machines have no counters")),
    };
    let states: Vec<QState> = f
        .states
        .into_iter()
        .map(|s| QState {
            name: s.name,
            tag: s.tag,
            accepting: s.accepting,
        })
        .collect();
    let registers: Vec<RegisterSymbol> = f
        .registers
        .into_iter()
        .map(|r| RegisterSymbol {
            name: r.name,
            class: r.class,
        })
        .collect();
    let state_index = Names::new(states.iter().map(|s| &s.name), "state")?;
    let register_index = Names::new(registers.iter().map(|r| &r.name), "register symbol")?;
    let mut delta: Vec<Vec<Vec<QTransition>>> = table(states.len(), &f.alphabet);
    for t in f.transitions {
        let sym = f.alphabet.tape_index(f.alphabet.parse_tape(&t.symbol)?);
        delta[state_index.get(&t.source)?][sym].push(QTransition {
            amp: decode_amp(t.amplitude)?,
            target: state_index.get(&t.target)?,
            update: t.update,
            register: register_index.get(&t.register)?,
        });
    }
    let spec = QMachineSpec::new(mode, f.alphabet, states, registers, delta)?;
    Ok(MachineDoc::new(
        Machine::Quantum(spec),
        parse_language(f.language)?,
    ))
}
