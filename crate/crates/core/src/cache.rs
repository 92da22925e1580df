//! Process-wide memo tables for per-λ quantities.

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::{OnceLock, RwLock};

use crate::exponents::LevyExponent;
use crate::quadrature::QuadratureConfig;

const CAPACITY: usize = 4_000_000;

pub(crate) struct Memo<K, V> {
    map: OnceLock<RwLock<HashMap<K, V>>>,
}

impl<K: Eq + Hash, V: Clone> Memo<K, V> {
    pub(crate) const fn new() -> Self {
        Self { map: OnceLock::new() }
    }

    fn inner(&self) -> &RwLock<HashMap<K, V>> {
        self.map.get_or_init(Default::default)
    }

    pub(crate) fn get(&self, key: &K) -> Option<V> {
        self.inner().read().unwrap().get(key).cloned()
    }

    pub(crate) fn insert(&self, key: K, value: V) {
        let mut map = self.inner().write().unwrap();
        if map.len() >= CAPACITY {
            map.clear();
        }
        map.insert(key, value);
    }

    pub(crate) fn get_or_try<E>(&self, key: K, f: impl FnOnce() -> Result<V, E>) -> Result<V, E> {
        if let Some(v) = self.get(&key) {
            return Ok(v);
        }
        let v = f()?;
        self.insert(key, v.clone());
        Ok(v)
    }
}

/// (family, config, bits of λ). Exact bits: the λ-rules reach down to 1e-12 and below,
/// where any rounding would merge distinct nodes.
pub(crate) type LambdaKey = ([u64; 3], [u64; 6], u64);

pub(crate) fn lambda_key(exp: &LevyExponent, cfg: &QuadratureConfig, lambda: f64) -> Option<LambdaKey> {
    (lambda.abs() < 1e6).then(|| (exp.key(), cfg.key(), lambda.to_bits()))
}
