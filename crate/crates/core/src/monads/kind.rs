use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Default cap on the number of global-state locations.
pub const DEFAULT_LOCATION_CAP: usize = 4;

/// Hard ceiling on locations regardless of configuration (stores are `u32` bitmasks).
pub const MAX_LOCATIONS: usize = 16;

/// Which of the six shipped monads, with its parameters.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MonadKind {
    Maybe,
    Exception { exceptions: Arc<[String]> },
    Powerset,
    Subdistribution,
    GlobalState { locations: Arc<[String]> },
    Output { alphabet: Arc<[char]> },
}

/// Parameterless tag of a [`MonadKind`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KindTag {
    Maybe,
    Exception,
    Powerset,
    Subdistribution,
    GlobalState,
    Output,
}

impl KindTag {
    pub const ALL: [KindTag; 6] = [
        KindTag::Maybe,
        KindTag::Exception,
        KindTag::Powerset,
        KindTag::Subdistribution,
        KindTag::GlobalState,
        KindTag::Output,
    ];

    /// Short name used by the CLI and the machine format.
    pub fn name(self) -> &'static str {
        match self {
            KindTag::Maybe => "maybe",
            KindTag::Exception => "exception",
            KindTag::Powerset => "powerset",
            KindTag::Subdistribution => "dist",
            KindTag::GlobalState => "state",
            KindTag::Output => "output",
        }
    }

    pub fn from_name(name: &str) -> Option<KindTag> {
        KindTag::ALL.into_iter().find(|t| t.name() == name)
    }
}

impl fmt::Display for KindTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn check_distinct<T: Ord + Clone + fmt::Debug>(what: &str, items: &[T]) -> Result<()> {
    if items.is_empty() {
        return Err(Error::InvalidKind(format!("{what} must be non-empty")));
    }
    let mut sorted = items.to_vec();
    sorted.sort();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidKind(format!(
            "{what} contains duplicates: {items:?}"
        )));
    }
    Ok(())
}

impl MonadKind {
    pub fn exception<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        check_distinct("exception set", &labels)?;
        Ok(MonadKind::Exception {
            exceptions: labels.into(),
        })
    }

    pub fn global_state<S: Into<String>>(locations: impl IntoIterator<Item = S>) -> Result<Self> {
        Self::global_state_capped(locations, DEFAULT_LOCATION_CAP)
    }

    /// Global state with an explicit location cap (at most [`MAX_LOCATIONS`]).
    pub fn global_state_capped<S: Into<String>>(
        locations: impl IntoIterator<Item = S>,
        cap: usize,
    ) -> Result<Self> {
        let locations: Vec<String> = locations.into_iter().map(Into::into).collect();
        check_distinct("location list", &locations)?;
        let cap = cap.min(MAX_LOCATIONS);
        if locations.len() > cap {
            return Err(Error::InvalidKind(format!(
                "{} locations exceed the cap of {cap}",
                locations.len()
            )));
        }
        Ok(MonadKind::GlobalState {
            locations: locations.into(),
        })
    }

    pub fn output(alphabet: impl IntoIterator<Item = char>) -> Result<Self> {
        let alphabet: Vec<char> = alphabet.into_iter().collect();
        check_distinct("alphabet", &alphabet)?;
        Ok(MonadKind::Output {
            alphabet: alphabet.into(),
        })
    }

    pub fn tag(&self) -> KindTag {
        match self {
            MonadKind::Maybe => KindTag::Maybe,
            MonadKind::Exception { .. } => KindTag::Exception,
            MonadKind::Powerset => KindTag::Powerset,
            MonadKind::Subdistribution => KindTag::Subdistribution,
            MonadKind::GlobalState { .. } => KindTag::GlobalState,
            MonadKind::Output { .. } => KindTag::Output,
        }
    }

    pub fn exceptions(&self) -> &[String] {
        match self {
            MonadKind::Exception { exceptions } => exceptions,
            _ => &[],
        }
    }

    pub fn locations(&self) -> &[String] {
        match self {
            MonadKind::GlobalState { locations } => locations,
            _ => &[],
        }
    }

    pub fn alphabet(&self) -> &[char] {
        match self {
            MonadKind::Output { alphabet } => alphabet,
            _ => &[],
        }
    }

    /// Number of stores `2^|L|` (1 for every other kind).
    pub fn store_count(&self) -> usize {
        1usize << self.locations().len()
    }

    pub fn location_index(&self, name: &str) -> Option<usize> {
        self.locations().iter().position(|l| l == name)
    }

    pub(crate) fn expect(&self, other: &MonadKind) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::KindMismatch {
                expected: self.to_string(),
                found: other.to_string(),
            })
        }
    }
}

impl fmt::Display for MonadKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonadKind::Exception { exceptions } => {
                write!(f, "exception{{{}}}", exceptions.join(","))
            }
            MonadKind::GlobalState { locations } => write!(f, "state{{{}}}", locations.join(",")),
            MonadKind::Output { alphabet } => {
                write!(f, "output{{{}}}", alphabet.iter().collect::<String>())
            }
            other => f.write_str(other.tag().name()),
        }
    }
}

/// A global store: bit `k` holds the value of location `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Store(pub u32);

impl Store {
    pub fn get(self, loc: usize) -> bool {
        self.0 >> loc & 1 == 1
    }

    pub fn set(self, loc: usize, bit: bool) -> Store {
        if bit {
            Store(self.0 | 1 << loc)
        } else {
            Store(self.0 & !(1 << loc))
        }
    }

    /// Bits in location order, e.g. `"01"` for loc0 = 0, loc1 = 1.
    pub fn render(self, width: usize) -> String {
        (0..width)
            .map(|k| if self.get(k) { '1' } else { '0' })
            .collect()
    }

    pub fn parse(bits: &str, width: usize) -> Result<Store> {
        if bits.chars().count() != width {
            return Err(Error::Decode(format!(
                "store `{bits}` must have {width} bits"
            )));
        }
        bits.chars()
            .enumerate()
            .try_fold(Store(0), |s, (k, c)| match c {
                '0' => Ok(s),
                '1' => Ok(s.set(k, true)),
                _ => Err(Error::Decode(format!("bad store bit `{c}`"))),
            })
    }
}
