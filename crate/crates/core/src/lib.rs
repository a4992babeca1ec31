//! Exact computation of the canonical differential form `alpha` attached to a
//! Feynman graph, its Dodgson-polynomial building blocks, and checks of the
//! identity `alpha ^ alpha = 0`.

pub mod graph;
pub mod poly;
pub mod dodgson;
pub mod forms;
pub mod alpha;
pub mod combinat;
