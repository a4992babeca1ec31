use std::collections::HashMap;
use std::sync::Arc;

use super::PolyError;

/// What a variable stands for. Only used for bookkeeping and printing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VarClass {
    /// Schwinger parameter `a_e`.
    Edge,
    /// Vertex position `x_v`.
    Vertex,
    /// Formal symmetric symbol `D_{i,j}`.
    Formal,
    /// Anything else (kinematic symbols, masses).
    Other,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VarRegistry {
    names: Vec<String>,
    classes: Vec<VarClass>,
    index: HashMap<String, usize>,
}

impl VarRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, name: impl Into<String>, class: VarClass) -> Result<usize, PolyError> {
        let name = name.into();
        if self.index.contains_key(&name) {
            return Err(PolyError::DuplicateVariable(name));
        }
        let id = self.names.len();
        self.index.insert(name.clone(), id);
        self.names.push(name);
        self.classes.push(class);
        Ok(id)
    }

    /// `a1..am`.
    pub fn edges(m: usize) -> Arc<Self> {
        Arc::new(Self::edges_and_vertices(m, 0))
    }

    /// `a1..am` followed by `x1..xn`.
    pub fn edges_and_vertices(m: usize, n: usize) -> Self {
        let mut reg = Self::new();
        for e in 1..=m {
            reg.add(format!("a{e}"), VarClass::Edge).unwrap();
        }
        for v in 1..=n {
            reg.add(format!("x{v}"), VarClass::Vertex).unwrap();
        }
        reg
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, id: usize) -> &str {
        &self.names[id]
    }

    pub fn class(&self, id: usize) -> VarClass {
        self.classes[id]
    }

    pub fn lookup(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }
}

pub(crate) fn same_registry(a: &Arc<VarRegistry>, b: &Arc<VarRegistry>) -> bool {
    Arc::ptr_eq(a, b) || a.names == b.names
}
