//! Blockchain-based mix network library.
//!
//! The crate bundles everything needed to run and attack a self-organizing
//! mix cascade elected from simulated blockchain miners:
//!
//! - [`group`]: elliptic-curve group arithmetic plus the cryptographic
//!   primitives built on it (EC-ElGamal, ECDH, a Chaum–Pedersen VRF, hash
//!   commitments, message embedding).
//! - [`mixnet`]: the additive-homomorphism mix cascade with precomputation
//!   and real-time phases.
//! - [`cmix`]: the multiplicative-group reference mix-net and the collision
//!   tagging attack against it, used as the baseline.
//! - [`ledger`]: the tri-chain proof-of-work ledger (main, key-exchange and
//!   commitment chains) with validation and fork choice.
//! - [`election`]: PoW candidate voting, IP sharding into node pools, VRF
//!   winner selection and the Poisson candidate analytics.
//! - [`netsim`]: a deterministic discrete-event network simulator with a
//!   configurable Byzantine adversary.
//! - [`orchestrator`]: the four protocol phases (init, vote, mix, audit)
//!   wired through the simulator and the ledger.
//! - [`attacks`]: Monte-Carlo attack experiments (Sybil, tagging, anonymity
//!   game, replay/MitM/failover drills).

pub mod attacks;
pub mod cmix;
pub mod counters;
pub mod election;
pub mod group;
pub mod ledger;
pub mod mixnet;
pub mod netsim;
pub mod orchestrator;
pub mod seeds;
