//! Round drivers: precomputation and real-time pipelines, with a message
//! observer hook (for the network simulator) and a fault plan (for the audit
//! harness).

use rand::RngCore;

use super::cascade::{Cascade, NodeCommitments};
use super::wire::{self, StageTag};
use super::MixError;
use crate::group::{
    ciphertext_add, commit, decryption_share, encrypt, Commitment, Curve, CurvePoint,
    ElgamalCiphertext,
};

/// Where a fault is injected, for audit-attribution experiments.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PipelineStep {
    PrecomputePreprocess,
    PrecomputeMix,
    ShareComputation,
    RealtimePreprocess,
    RealtimeMix,
    /// Open a share that differs from the committed one.
    ShareOpening,
    /// Refuse to open the share at all.
    ShareRefusal,
}

pub const TAMPER_STEPS: [PipelineStep; 7] = [
    PipelineStep::PrecomputePreprocess,
    PipelineStep::PrecomputeMix,
    PipelineStep::ShareComputation,
    PipelineStep::RealtimePreprocess,
    PipelineStep::RealtimeMix,
    PipelineStep::ShareOpening,
    PipelineStep::ShareRefusal,
];

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Fault {
    pub node: usize,
    pub step: PipelineStep,
}

#[derive(Clone, Default, Debug)]
pub struct FaultPlan {
    pub faults: Vec<Fault>,
}

impl FaultPlan {
    pub fn none() -> Self {
        Self::default()
    }

    pub fn single(node: usize, step: PipelineStep) -> Self {
        FaultPlan { faults: vec![Fault { node, step }] }
    }

    fn hits(&self, node: usize, step: PipelineStep) -> bool {
        self.faults.iter().any(|f| f.node == node && f.step == step)
    }
}

/// Messages crossing the cascade, surfaced to the caller so a network
/// simulator can route them and an adversary can observe them.
#[derive(Debug)]
pub enum MixMessage<'a> {
    Commitments { node: usize, coms: &'a NodeCommitments },
    PreprocessHop { from: usize, to: usize, payload: &'a [ElgamalCiphertext] },
    PreprocessOutCommitment { from: usize, com: &'a Commitment },
    MixHop { from: usize, to: usize, payload: &'a [ElgamalCiphertext] },
    PrecomputeFinalBroadcast { from: usize, payload: &'a [ElgamalCiphertext] },
    ShareCommitment { node: usize, com: &'a Commitment },
    /// Private transfer of a decryption share to the aggregating last node.
    ShareToAggregator { from: usize, to: usize },
    RtHop { from: usize, to: usize, payload: &'a [CurvePoint] },
    RtMixedCommitment { from: usize, com: &'a Commitment },
    ShareOpening { node: usize },
    Output { payload: &'a [CurvePoint] },
}

#[derive(Clone, Debug)]
pub struct ShareOpening {
    pub node: usize,
    pub payload: Vec<u8>,
    pub nonce: [u8; 32],
}

/// Everything the precomputation published or sent, kept for the audit.
#[derive(Clone, Debug)]
pub struct PrecomputeRecord {
    pub round_id: u64,
    pub beta: usize,
    pub commitments: Vec<NodeCommitments>,
    /// Output of each node in the preprocess chain.
    pub preprocess_msgs: Vec<Vec<ElgamalCiphertext>>,
    pub preprocess_out_com: Commitment,
    /// Output of each node in the mix chain.
    pub mix_msgs: Vec<Vec<ElgamalCiphertext>>,
    /// The accumulated ciphertext (x⃗, c⃗) broadcast to every node.
    pub final_cipher: Vec<ElgamalCiphertext>,
    pub share_commitments: Vec<Commitment>,
    /// (from, to) of every private share transfer; the audit asserts only
    /// the last node ever aggregates.
    pub share_recipients: Vec<(usize, usize)>,
}

#[derive(Clone, Debug)]
pub struct RoundOutcome {
    pub round_id: u64,
    pub blinded_inputs: Vec<CurvePoint>,
    pub rt_preprocess_msgs: Vec<Vec<CurvePoint>>,
    pub rt_mix_msgs: Vec<Vec<CurvePoint>>,
    pub mixed_commitment: Commitment,
    pub mixed: Vec<CurvePoint>,
    pub openings: Vec<ShareOpening>,
    pub output: Vec<CurvePoint>,
}

/// A node's audit response: the payload+nonce pairs opening its published
/// commitments (r, s, π, x, k, share).
#[derive(Clone, Debug)]
pub struct AuditOpenings {
    pub node: usize,
    pub r: (Vec<u8>, [u8; 32]),
    pub s: (Vec<u8>, [u8; 32]),
    pub perm: (Vec<u8>, [u8; 32]),
    pub x: (Vec<u8>, [u8; 32]),
    pub k: (Vec<u8>, [u8; 32]),
    pub share: Option<(Vec<u8>, [u8; 32])>,
}

/// M_j − K_j: the sender blinds its encoded message with the slot key.
pub fn blind_message(curve: &Curve, m: &CurvePoint, slot_key: &CurvePoint) -> CurvePoint {
    curve.sub(m, slot_key)
}

fn tamper_point(curve: &Curve, v: &mut [CurvePoint]) {
    v[0] = curve.add(&v[0], &curve.generator());
}

fn tamper_cipher(curve: &Curve, v: &mut [ElgamalCiphertext]) {
    v[0].c2 = curve.add(&v[0].c2, &curve.generator());
}

/// Run the full precomputation: commitments, preprocess chain, mix chain,
/// share computation. All public-key work happens here.
pub fn run_precompute(
    cascade: &mut Cascade,
    round_id: u64,
    rng: &mut impl RngCore,
    faults: &FaultPlan,
    mut observe: impl FnMut(&MixMessage),
) -> Result<PrecomputeRecord, MixError> {
    let curve = cascade.curve();
    let n = cascade.len();
    let beta = cascade.beta();
    let commitments = cascade.begin_round(round_id, rng)?;
    for coms in &commitments {
        observe(&MixMessage::Commitments { node: coms.node, coms });
    }

    // Preprocess: ℰ_Q(R_i) = ℰ_Q(R_{i-1}) ⊕ ℰ_Q(r_i).
    let system_key = cascade.system_key().clone();
    let mut preprocess_msgs: Vec<Vec<ElgamalCiphertext>> = Vec::with_capacity(n);
    let mut current: Option<Vec<ElgamalCiphertext>> = None;
    for i in 0..n {
        let round = cascade.round_of(i)?;
        let mut out: Vec<ElgamalCiphertext> = Vec::with_capacity(beta);
        for a in 0..beta {
            let enc = encrypt(curve, &round.r_points[a], &system_key, &round.enc_rand[a])?;
            out.push(match &current {
                None => enc,
                Some(prev) => ciphertext_add(curve, &prev[a], &enc),
            });
        }
        if faults.hits(i, PipelineStep::PrecomputePreprocess) {
            tamper_cipher(curve, &mut out);
        }
        observe(&MixMessage::PreprocessHop { from: i, to: (i + 1) % n, payload: &out });
        preprocess_msgs.push(out.clone());
        current = Some(out);
    }
    let preprocess_final = current.expect("at least one node");
    let preprocess_out_bytes = wire::cipher_vec_bytes(
        curve,
        round_id,
        beta,
        StageTag::PrecomputeOutput,
        &preprocess_final,
    );
    let preprocess_out_secret = commit(&preprocess_out_bytes, rng);
    let preprocess_out_com = preprocess_out_secret.commitment;
    observe(&MixMessage::PreprocessOutCommitment { from: n - 1, com: &preprocess_out_com });

    // Mix: π_i(prev) ⊕ ℰ_Q(s_i).
    let mut mix_msgs: Vec<Vec<ElgamalCiphertext>> = Vec::with_capacity(n);
    let mut current = preprocess_final;
    for i in 0..n {
        let round = cascade.round_of(i)?;
        let mut out = wire::apply_permutation(&round.perm, &current);
        for a in 0..beta {
            let enc =
                encrypt(curve, &round.s_points[a], &system_key, &round.enc_rand[beta + a])?;
            out[a] = ciphertext_add(curve, &out[a], &enc);
        }
        if faults.hits(i, PipelineStep::PrecomputeMix) {
            tamper_cipher(curve, &mut out);
        }
        observe(&MixMessage::MixHop { from: i, to: (i + 1) % n, payload: &out });
        mix_msgs.push(out.clone());
        current = out;
    }
    let final_cipher = current;
    observe(&MixMessage::PrecomputeFinalBroadcast { from: n - 1, payload: &final_cipher });

    // Shares: each node computes d_i·x⃗, commits, and sends it privately to
    // the last node, which stores V = c⃗ − Σ shares.
    let x_vec: Vec<CurvePoint> = final_cipher.iter().map(|c| c.c1.clone()).collect();
    let c_vec: Vec<CurvePoint> = final_cipher.iter().map(|c| c.c2.clone()).collect();
    let mut share_commitments = Vec::with_capacity(n);
    let mut share_recipients = Vec::with_capacity(n);
    let mut share_sum = vec![CurvePoint::Infinity; beta];
    for i in 0..n {
        let secret = cascade.nodes[i].secret.clone();
        let mut share: Vec<CurvePoint> =
            x_vec.iter().map(|x| decryption_share(curve, x, &secret)).collect();
        if faults.hits(i, PipelineStep::ShareComputation) {
            tamper_point(curve, &mut share);
        }
        let payload =
            wire::point_vec_bytes(curve, round_id, beta, StageTag::ShareVector, &share);
        let share_secret = commit(&payload, rng);
        share_commitments.push(share_secret.commitment);
        observe(&MixMessage::ShareCommitment { node: i, com: &share_secret.commitment });
        observe(&MixMessage::ShareToAggregator { from: i, to: n - 1 });
        share_recipients.push((i, n - 1));
        for a in 0..beta {
            share_sum[a] = curve.add(&share_sum[a], &share[a]);
        }
        let round = cascade.round_of_mut(i)?;
        round.share = Some(share);
        round.share_com = Some(share_secret);
    }
    let stored_v: Vec<CurvePoint> =
        (0..beta).map(|a| curve.sub(&c_vec[a], &share_sum[a])).collect();
    for i in 0..n {
        let round = cascade.round_of_mut(i)?;
        round.precompute_done = true;
        if i == n - 1 {
            round.stored_v = Some(stored_v.clone());
        }
    }

    Ok(PrecomputeRecord {
        round_id,
        beta,
        commitments,
        preprocess_msgs,
        preprocess_out_com,
        mix_msgs,
        final_cipher,
        share_commitments,
        share_recipients,
    })
}

/// Run the real-time pipeline. No scalar multiplication happens in here:
/// preprocess and mix are point additions over precomputed values, and the
/// postprocess combines opened shares with additions only.
pub fn run_realtime(
    cascade: &mut Cascade,
    record: &PrecomputeRecord,
    blinded: Vec<CurvePoint>,
    faults: &FaultPlan,
    mut observe: impl FnMut(&MixMessage),
) -> Result<RoundOutcome, MixError> {
    let curve = cascade.curve();
    let n = cascade.len();
    let beta = cascade.beta();
    if blinded.len() != beta {
        return Err(MixError::WrongBatchSize { expected: beta, got: blinded.len() });
    }
    for i in 0..n {
        match cascade.nodes[i].round.as_ref() {
            Some(round) if round.precompute_done && round.round_id == record.round_id => {}
            _ => return Err(MixError::RoundNotPrecomputed),
        }
    }

    // Preprocess: add k_i + r_i elementwise.
    let mut rt_preprocess_msgs = Vec::with_capacity(n);
    let mut current = blinded.clone();
    for i in 0..n {
        let k_row = cascade.nodes[i].shared_keys.clone();
        let round = cascade.round_of(i)?;
        let r_points = round.r_points.clone();
        let mut out: Vec<CurvePoint> = (0..beta)
            .map(|a| curve.add(&current[a], &curve.add(&k_row[a], &r_points[a])))
            .collect();
        if faults.hits(i, PipelineStep::RealtimePreprocess) {
            tamper_point(curve, &mut out);
        }
        observe(&MixMessage::RtHop { from: i, to: (i + 1) % n, payload: &out });
        rt_preprocess_msgs.push(out.clone());
        current = out;
    }

    // Mix: π_i(prev) + s_i.
    let mut rt_mix_msgs = Vec::with_capacity(n);
    for i in 0..n {
        let round = cascade.round_of(i)?;
        let perm = round.perm.clone();
        let s_points = round.s_points.clone();
        let mut out = wire::apply_permutation(&perm, &current);
        for a in 0..beta {
            out[a] = curve.add(&out[a], &s_points[a]);
        }
        if faults.hits(i, PipelineStep::RealtimeMix) {
            tamper_point(curve, &mut out);
        }
        observe(&MixMessage::RtHop { from: i, to: (i + 1) % n, payload: &out });
        rt_mix_msgs.push(out.clone());
        current = out;
    }
    let mixed = current;

    // The last node commits to its mixed output before any share is opened.
    let mixed_bytes = wire::point_vec_bytes(
        curve,
        record.round_id,
        beta,
        StageTag::RealtimeMixedOutput,
        &mixed,
    );
    let mixed_commitment = Commitment { digest: crate::group::hashes::h(&mixed_bytes) };
    observe(&MixMessage::RtMixedCommitment { from: n - 1, com: &mixed_commitment });

    // Postprocess: open shares, verify against their commitments, and
    // combine: output = mixed − c⃗ + Σ shares.
    let mut openings = Vec::with_capacity(n);
    let mut opened_shares: Vec<Vec<CurvePoint>> = Vec::with_capacity(n);
    for i in 0..n {
        if faults.hits(i, PipelineStep::ShareRefusal) {
            return Err(MixError::ShareWithheld { node: i });
        }
        let round = cascade.round_of(i)?;
        let share = round.share.clone().expect("precompute stored the share");
        let share_secret = round.share_com.clone().expect("share committed");
        let (payload, nonce) = if faults.hits(i, PipelineStep::ShareOpening) {
            let mut tampered = share.clone();
            tamper_point(curve, &mut tampered);
            let payload = wire::point_vec_bytes(
                curve,
                record.round_id,
                beta,
                StageTag::ShareVector,
                &tampered,
            );
            (payload, share_secret.nonce)
        } else {
            let payload = wire::point_vec_bytes(
                curve,
                record.round_id,
                beta,
                StageTag::ShareVector,
                &share,
            );
            (payload, share_secret.nonce)
        };
        if !record.share_commitments[i].open(&payload, &nonce) {
            return Err(MixError::ShareCommitmentMismatch { node: i });
        }
        observe(&MixMessage::ShareOpening { node: i });
        let (_, _, points) = wire::parse_point_vec(curve, &payload)?;
        opened_shares.push(points);
        openings.push(ShareOpening { node: i, payload, nonce });
    }
    let mut output = Vec::with_capacity(beta);
    for a in 0..beta {
        let mut v = curve.sub(&mixed[a], &record.final_cipher[a].c2);
        for share in &opened_shares {
            v = curve.add(&v, &share[a]);
        }
        output.push(v);
    }
    observe(&MixMessage::Output { payload: &output });

    // Consume the round: a precomputation serves exactly one batch.
    for node in &mut cascade.nodes {
        node.round = None;
    }

    Ok(RoundOutcome {
        round_id: record.round_id,
        blinded_inputs: blinded,
        rt_preprocess_msgs,
        rt_mix_msgs,
        mixed_commitment,
        mixed,
        openings,
        output,
    })
}

impl Cascade {
    /// Collect a node's audit openings; `None` share when it refused or the
    /// round was consumed. Must be called before the round is consumed, so
    /// the orchestrator snapshots openings during the round.
    pub fn audit_openings(&self, node: usize) -> Option<AuditOpenings> {
        let curve = self.curve();
        let state = self.nodes[node].round.as_ref()?;
        let round_id = state.round_id;
        let beta = state.r_points.len();
        let mk = |payload: Vec<u8>, idx: usize| (payload, state.com_secrets[idx].nonce);
        Some(AuditOpenings {
            node,
            r: mk(
                wire::point_vec_bytes(curve, round_id, beta, StageTag::RVector, &state.r_points),
                0,
            ),
            s: mk(
                wire::point_vec_bytes(curve, round_id, beta, StageTag::SVector, &state.s_points),
                1,
            ),
            perm: mk(wire::perm_bytes(round_id, beta, &state.perm), 2),
            x: mk(wire::scalar_vec_bytes(round_id, beta, &state.enc_rand), 3),
            k: mk(
                wire::point_vec_bytes(
                    curve,
                    round_id,
                    beta,
                    StageTag::SharedKeyVector,
                    &self.nodes[node].shared_keys,
                ),
                4,
            ),
            share: state.share.as_ref().map(|share| {
                let payload =
                    wire::point_vec_bytes(curve, round_id, beta, StageTag::ShareVector, share);
                (payload, state.share_com.as_ref().expect("committed").nonce)
            }),
        })
    }
}
