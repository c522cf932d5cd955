//! Computational toolkit for Aut(F_n)-actions on representation spaces
//! Hom(F_n, G) ≅ G^n.
//!
//! The crate is organized by subsystem:
//!
//! * [`freegroup`]: reduced words, Nielsen moves, the induced action on
//!   tuples, and primitive-element enumeration.
//! * [`exactalg`]: exact scalars (Q, Q(i), Laurent polynomials) and matrix
//!   algebra over them.
//! * [`spectra`]: unipotence, eigenvalue and order classifiers, plus the
//!   projective contraction certificate.
//! * [`density`]: Zariski-density certificates in SL_d via adjoint spans.
//! * [`puscan`]: primitive-unipotent scanning and simultaneous
//!   triangularization.
//! * [`cosets`]: cosets contained in conjugacy classes.
//! * [`compactdyn`]: floating-point dynamics on SU(2)^n.
//! * [`paperbench`]: explicit example constructions and their checks.
//!
//! Batch routines run on rayon when the `parallel` feature is enabled and
//! fall back to plain iterators otherwise; see [`par::Exec`].

pub mod compactdyn;
pub mod cosets;
pub mod density;
pub mod exactalg;
pub mod freegroup;
pub mod group;
pub mod paperbench;
pub mod par;
pub mod puscan;
pub mod spectra;
