//! Cascade state: node keys, shared keys, per-round secrets and commitments.

use rand::seq::SliceRandom;
use rand::RngCore;

use super::wire::{self, StageTag};
use super::MixError;
use crate::group::{
    commit, ecdh_shared, Commitment, CommitmentSecret, Curve, CurvePoint, Scalar,
};

/// A node's commitments published at the start of a round, before any
/// pipeline message flows.
#[derive(Clone, Debug)]
pub struct NodeCommitments {
    pub node: usize,
    pub com_r: Commitment,
    pub com_s: Commitment,
    pub com_perm: Commitment,
    pub com_x: Commitment,
    pub com_k: Commitment,
}

/// A node's opened per-round values, as revealed to the audit.
#[derive(Clone, Debug)]
pub struct RoundValues {
    pub r_points: Vec<CurvePoint>,
    pub s_points: Vec<CurvePoint>,
    pub perm: Vec<usize>,
    pub enc_rand: Vec<Scalar>,
    pub shared_keys: Vec<CurvePoint>,
}

pub(crate) struct RoundState {
    pub round_id: u64,
    pub r_points: Vec<CurvePoint>,
    pub s_points: Vec<CurvePoint>,
    pub r_draws: Vec<[u8; 32]>,
    pub s_draws: Vec<[u8; 32]>,
    pub perm: Vec<usize>,
    /// 2β scalars: β for the preprocess encryptions, β for the mix ones.
    pub enc_rand: Vec<Scalar>,
    pub com_secrets: Vec<CommitmentSecret>, // r, s, perm, x, k in that order
    pub share: Option<Vec<CurvePoint>>,
    pub share_com: Option<CommitmentSecret>,
    pub stored_v: Option<Vec<CurvePoint>>,
    pub precompute_done: bool,
}

pub(crate) struct MixNode {
    pub index: usize,
    pub secret: Scalar,
    pub public: CurvePoint,
    pub shared_keys: Vec<CurvePoint>, // k_i,j for each user slot j
    pub round: Option<RoundState>,
}

/// The elected cascade for one slot: n mix nodes serving β user slots.
pub struct Cascade {
    pub(crate) curve: &'static Curve,
    pub(crate) nodes: Vec<MixNode>,
    pub(crate) beta: usize,
    system_key: CurvePoint,
    slot_keys: Vec<CurvePoint>,
    pub(crate) round_counter: u64,
}

/// User-side slot key K_j = Σ_i ecdh(u_j, Q_i); equals the node-side sum by
/// ECDH symmetry.
pub fn user_slot_key(
    curve: &Curve,
    user_secret: &Scalar,
    node_publics: &[CurvePoint],
) -> Result<CurvePoint, MixError> {
    let mut k = CurvePoint::Infinity;
    for q in node_publics {
        k = curve.add(&k, &ecdh_shared(curve, user_secret, q)?);
    }
    Ok(k)
}

impl Cascade {
    /// Non-interactive setup from published addresses: derives the n×β
    /// shared-key matrix, the slot keys K_j and the system key Q.
    pub fn new(
        curve: &'static Curve,
        node_secrets: Vec<Scalar>,
        user_publics: &[CurvePoint],
    ) -> Result<Self, MixError> {
        let beta = user_publics.len();
        let mut nodes = Vec::with_capacity(node_secrets.len());
        for (index, secret) in node_secrets.into_iter().enumerate() {
            let public = curve.base_mul(&secret);
            let mut shared_keys = Vec::with_capacity(beta);
            for pk in user_publics {
                shared_keys.push(ecdh_shared(curve, &secret, pk)?);
            }
            nodes.push(MixNode { index, secret, public, shared_keys, round: None });
        }
        let system_key = curve.sum(nodes.iter().map(|n| &n.public));
        let mut slot_keys = Vec::with_capacity(beta);
        for j in 0..beta {
            slot_keys.push(curve.sum(nodes.iter().map(|n| &n.shared_keys[j])));
        }
        Ok(Cascade { curve, nodes, beta, system_key, slot_keys, round_counter: 0 })
    }

    pub fn curve(&self) -> &'static Curve {
        self.curve
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn beta(&self) -> usize {
        self.beta
    }

    /// β = 1 runs, but a single-slot batch links its only sender trivially.
    pub fn provides_anonymity(&self) -> bool {
        self.beta >= 2
    }

    pub fn system_key(&self) -> &CurvePoint {
        &self.system_key
    }

    pub fn slot_keys(&self) -> &[CurvePoint] {
        &self.slot_keys
    }

    pub fn node_public(&self, node: usize) -> &CurvePoint {
        &self.nodes[node].public
    }

    pub fn node_publics(&self) -> Vec<CurvePoint> {
        self.nodes.iter().map(|n| n.public.clone()).collect()
    }

    /// k_{i,j} matrix, node-major, for setup verification.
    pub fn shared_key_matrix(&self) -> Vec<Vec<CurvePoint>> {
        self.nodes.iter().map(|n| n.shared_keys.clone()).collect()
    }

    pub fn current_round_id(&self) -> Option<u64> {
        self.nodes.first().and_then(|n| n.round.as_ref().map(|r| r.round_id))
    }

    /// Draw fresh r, s, π and encryption randomness for every node and
    /// publish the five commitments each. Round ids must strictly increase.
    pub fn begin_round(
        &mut self,
        round_id: u64,
        rng: &mut impl RngCore,
    ) -> Result<Vec<NodeCommitments>, MixError> {
        if round_id <= self.round_counter {
            return Err(MixError::StaleRound);
        }
        self.round_counter = round_id;
        let curve = self.curve;
        let beta = self.beta;
        let mut published = Vec::with_capacity(self.nodes.len());
        for node in &mut self.nodes {
            let mut r_points = Vec::with_capacity(beta);
            let mut s_points = Vec::with_capacity(beta);
            let mut r_draws = Vec::with_capacity(beta);
            let mut s_draws = Vec::with_capacity(beta);
            for _ in 0..beta {
                let (k, draw) = curve.random_scalar_with_draw(rng);
                r_points.push(curve.base_mul(&k));
                r_draws.push(draw);
            }
            for _ in 0..beta {
                let (k, draw) = curve.random_scalar_with_draw(rng);
                s_points.push(curve.base_mul(&k));
                s_draws.push(draw);
            }
            let mut perm: Vec<usize> = (0..beta).collect();
            perm.shuffle(rng);
            let mut enc_rand = Vec::with_capacity(2 * beta);
            for _ in 0..2 * beta {
                // Zero randomness is rejected by encrypt(); redraw.
                loop {
                    let x = curve.random_scalar(rng);
                    if !x.is_zero() {
                        enc_rand.push(x);
                        break;
                    }
                }
            }

            let payload_r =
                wire::point_vec_bytes(curve, round_id, beta, StageTag::RVector, &r_points);
            let payload_s =
                wire::point_vec_bytes(curve, round_id, beta, StageTag::SVector, &s_points);
            let payload_perm = wire::perm_bytes(round_id, beta, &perm);
            let payload_x = wire::scalar_vec_bytes(round_id, beta, &enc_rand);
            let payload_k = wire::point_vec_bytes(
                curve,
                round_id,
                beta,
                StageTag::SharedKeyVector,
                &node.shared_keys,
            );
            let com_secrets = vec![
                commit(&payload_r, rng),
                commit(&payload_s, rng),
                commit(&payload_perm, rng),
                commit(&payload_x, rng),
                commit(&payload_k, rng),
            ];
            published.push(NodeCommitments {
                node: node.index,
                com_r: com_secrets[0].commitment,
                com_s: com_secrets[1].commitment,
                com_perm: com_secrets[2].commitment,
                com_x: com_secrets[3].commitment,
                com_k: com_secrets[4].commitment,
            });
            node.round = Some(RoundState {
                round_id,
                r_points,
                s_points,
                r_draws,
                s_draws,
                perm,
                enc_rand,
                com_secrets,
                share: None,
                share_com: None,
                stored_v: None,
                precompute_done: false,
            });
        }
        Ok(published)
    }

    pub(crate) fn round_of(&self, node: usize) -> Result<&RoundState, MixError> {
        self.nodes[node].round.as_ref().ok_or(MixError::StaleRound)
    }

    pub(crate) fn round_of_mut(&mut self, node: usize) -> Result<&mut RoundState, MixError> {
        self.nodes[node].round.as_mut().ok_or(MixError::StaleRound)
    }

    /// Raw RNG draws behind this round's r and s vectors, for freshness
    /// audits across rounds.
    pub fn draw_stream(&self, node: usize) -> Option<(Vec<[u8; 32]>, Vec<[u8; 32]>)> {
        self.nodes[node]
            .round
            .as_ref()
            .map(|r| (r.r_draws.clone(), r.s_draws.clone()))
    }
}
