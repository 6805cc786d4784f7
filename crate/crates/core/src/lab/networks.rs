use serde::{Deserialize, Serialize};

use crate::algorithms::grover_network;
use crate::error::{domain, LabError, Result};
use crate::simcore::{Gate, NetworkBuilder, QueryNetwork};

/// Networks available to `extract-poly` and the degree checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Builtin {
    /// No queries; always accepts.
    Constant,
    /// One query at a uniformly random index; accepts with probability `|X|/N`.
    Lookup,
    /// Grover search with the given iteration count (plus the verification query).
    Grover,
}

impl std::str::FromStr for Builtin {
    type Err = LabError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "constant" => Ok(Self::Constant),
            "lookup" => Ok(Self::Lookup),
            "grover" => Ok(Self::Grover),
            other => Err(domain(format!("unknown network {other:?} (constant|lookup|grover)"))),
        }
    }
}

/// Builds a built-in network on `N` items; qubit 0 is the output.
pub fn builtin_network(kind: Builtin, n_items: usize, iterations: usize) -> Result<QueryNetwork> {
    match kind {
        Builtin::Grover => grover_network(n_items, iterations),
        Builtin::Constant | Builtin::Lookup => {
            if n_items == 0 || !n_items.is_power_of_two() {
                return Err(domain(format!("N = {n_items} is not a power of two")));
            }
            let mut b = NetworkBuilder::new();
            let out = b.qubit("answer");
            let idx = b.alloc("index", n_items.trailing_zeros() as usize);
            if kind == Builtin::Constant {
                b.gate(Gate::X(out));
            } else {
                b.h_all(&idx);
                b.query(&idx, out, Some("lookup"));
            }
            b.build(out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simcore::{acceptance_probability, BitOracle};

    #[test]
    fn acceptance_of_builtins() {
        let x = BitOracle::parse("0110").unwrap();
        let c = builtin_network(Builtin::Constant, 4, 0).unwrap();
        assert_eq!(c.query_count(), 0);
        assert!((acceptance_probability(&c, &x).unwrap() - 1.0).abs() < 1e-12);
        let l = builtin_network(Builtin::Lookup, 4, 0).unwrap();
        assert_eq!(l.query_count(), 1);
        assert!((acceptance_probability(&l, &x).unwrap() - 0.5).abs() < 1e-12);
        assert_eq!(builtin_network(Builtin::Grover, 4, 2).unwrap().query_count(), 3);
        assert!("oracle".parse::<Builtin>().is_err());
    }
}
