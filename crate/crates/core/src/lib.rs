pub mod bounds;
pub mod cyclic;
pub mod error;
pub mod gf;
pub mod harness;
pub mod oracle;
pub mod proofcheck;
pub mod transform;
pub mod usemiring;
