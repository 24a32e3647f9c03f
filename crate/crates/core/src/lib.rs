//! Affine Weyl group combinatorics for local models of ramified odd unitary
//! groups: Bruhat order, parahoric cosets, faces of type I, admissible and
//! permissible sets, the combinatorial spin condition, and a harness that
//! checks the equivalences between them by exhaustive enumeration.

pub mod bruhat;
pub mod error;
pub mod faces;
pub mod harness;
pub mod permissibility;
pub mod spin;
pub mod weyl;

pub use bruhat::{
    bruhat_leq, bruhat_leq_cosets, covers_below, downward_closure, length, min_length_rep, omega_decompose, parahoric,
    separating_hyperplanes, BruhatCache, ClosureProvider, DirectClosure, Hyperplane, Parahoric,
};
pub use error::{Error, Result};
pub use faces::{check_basic_inequalities, face_of, mu_family, standard_face, BasicViolation, FaceOfTypeI, MuFamily};
pub use harness::{
    verify_adm_perm_intersect, verify_basic_lemmas, verify_containment, verify_equivalence_gu, verify_perm_eq_adm,
    verify_steinberg_lemma, Verdict, VerificationReport,
};
pub use permissibility::{
    enumerate_admissible, enumerate_permissible, is_mu_admissible, is_mu_permissible, is_naively_permissible,
    is_wedge_permissible, CosetMode, DominantCochar, EnumerationResult, PermKind,
};
pub use spin::{is_spin_permissible, spin_witness, SignedIndex, SpinCase, SpinWitness};
pub use weyl::{weyl_orbit, GroupContext, LevelStructure, WeylElement};
