//! Bit-exact B-block simulator for the single-direct-link relay-layer coding
//! schemes on the deterministic channel.
//!
//! All four schemes share one skeleton. Transmitter 2 splits each block's
//! fresh message into common / relay / private segments. Its relay segment
//! reaches receiver 1 over the cross link, transmitter 1 recovers it from
//! the fed-back channel output, and retransmits it in the next block
//! (`x1[i+1].relay = x2[i].relay`). Boundary blocks follow the silent-
//! transmitter convention: T1 sends nothing in block 1, T2 nothing in block
//! B, and the achieved rates carry the resulting `(B−1)/B` factors.
//!
//! The simulator never copies message bits across nodes: T1 recovers the
//! relay segment from its feedback signal, and each receiver works only on
//! its own channel outputs plus what it has already decoded. `decode_ok`
//! then certifies zero-error operation of the scheme as specified, block by
//! block and bit by bit.
//!
//! Per-block decoding order:
//! * weak schemes (`m ≤ n`): forward at D2, backward at D1;
//! * the `m > 2n` routing scheme: forward at both receivers;
//! * the all-relay scheme (`m > n`): forward at D1 (nothing to decode) and
//!   backward at D2, anchored at the final silent block: the fresh bits
//!   arriving on the direct link overlap the retransmitted ones, and the
//!   chain only unravels from the clean last block.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::det_model::{channel_output, BitVec, DetParams};
use crate::rate_region::RatePair;

/// The four corner-point schemes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SchemeId {
    /// Weak interference, corner `(n − m, n)`: relay layer fills the top
    /// `m` levels, private the rest.
    WeakR2Sum,
    /// Weak interference with `n/2 ≤ m < 2n/3`, corner `(m, 2n − 2m)`:
    /// layout `[common, relay, common, private]` with the common segment
    /// transmitted twice.
    WeakSum2R,
    /// Strong interference, corner `(0, m)`: T2's whole vector is relay
    /// traffic routed through the T2 → D1 → feedback → T1 → D2 path.
    StrongRelayOnly,
    /// Very strong interference `m > 2n`, corner `(n, m − n)`: private bits
    /// ride the direct links while the excess cross capacity relays.
    StrongR1Sum,
}

impl SchemeId {
    pub const ALL: [SchemeId; 4] = [
        SchemeId::WeakR2Sum,
        SchemeId::WeakSum2R,
        SchemeId::StrongRelayOnly,
        SchemeId::StrongR1Sum,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            SchemeId::WeakR2Sum => "weak-r2sum",
            SchemeId::WeakSum2R => "weak-sum2r",
            SchemeId::StrongRelayOnly => "strong-relay-only",
            SchemeId::StrongR1Sum => "strong-r1sum",
        }
    }

    pub fn from_name(s: &str) -> Option<SchemeId> {
        SchemeId::ALL.iter().copied().find(|k| k.name() == s)
    }

    /// Whether `(n, m)` lies in the scheme's regime.
    pub fn valid_for(&self, p: DetParams) -> bool {
        let (n, m) = (p.n as i64, p.m as i64);
        match self {
            SchemeId::WeakR2Sum => m <= n && n >= 1,
            // Relay segment must be nonempty: strictly below 2n/3.
            SchemeId::WeakSum2R => 2 * m >= n && 3 * m < 2 * n,
            SchemeId::StrongRelayOnly => m > n,
            SchemeId::StrongR1Sum => m > 2 * n,
        }
    }

    /// Corner point the scheme approaches as `B → ∞`.
    pub fn target(&self, p: DetParams) -> RatePair {
        let (n, m) = (p.n as f64, p.m as f64);
        match self {
            SchemeId::WeakR2Sum => RatePair(n - m, n),
            SchemeId::WeakSum2R => RatePair(m, 2.0 * n - 2.0 * m),
            SchemeId::StrongRelayOnly => RatePair(0.0, m),
            SchemeId::StrongR1Sum => RatePair(n, m - n),
        }
    }

    /// Exact achieved rates after `b` blocks of zero-error operation.
    pub fn achieved_closed_form(&self, p: DetParams, b: u32) -> RatePair {
        let (n, m) = (p.n as u64, p.m as u64);
        let b = b as u64;
        let pair = |u1: u64, u2: u64| RatePair(u1 as f64 / b as f64, u2 as f64 / b as f64);
        match self {
            SchemeId::WeakR2Sum => pair((b - 1) * (n - m), (b - 1) * n),
            SchemeId::WeakSum2R => pair((b - 1) * m, (b - 1) * (2 * n - 2 * m)),
            SchemeId::StrongRelayOnly => pair(0, (b - 1) * m),
            SchemeId::StrongR1Sum => pair((b - 1) * n, b * n + (b - 1) * (m - 2 * n)),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SimError {
    #[error("scheme {scheme} is outside its regime at n={n}, m={m}")]
    SchemeDomain { scheme: &'static str, n: u32, m: u32 },
    #[error("need at least 2 blocks, got {0}")]
    TooFewBlocks(u32),
}

/// Outcome of one simulation run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SimResult {
    pub blocks: u32,
    pub decode_ok: bool,
    /// Empirical rate pair: correctly decoded message bits per channel use.
    pub achieved: RatePair,
    pub target: RatePair,
}

/// One block of the transcript. `d1_decodes` / `d2_decodes` list the message
/// segments each receiver resolves while processing this block (in its own
/// decoding order, which runs backward through the blocks where noted).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BlockRecord {
    pub index: u32,
    pub x1: String,
    pub x2: String,
    pub y1: String,
    pub y2: String,
    pub d1_decodes: Vec<String>,
    pub d2_decodes: Vec<String>,
}

/// xorshift64* keyed through splitmix64. The seed contract is
/// reproducibility of a run, not any particular stream.
struct MsgRng(u64);

impl MsgRng {
    fn new(seed: u64) -> Self {
        let mut z = seed.wrapping_add(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^= z >> 31;
        MsgRng(z | 1)
    }

    fn next_u64(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.0 = x;
        x.wrapping_mul(0x2545_F491_4F6C_DD1D)
    }

    fn bits(&mut self, len: usize) -> BitVec {
        BitVec((0..len).map(|_| (self.next_u64() >> 63) as u8).collect())
    }
}

/// Run the scheme and return the summary result.
pub fn simulate(scheme: SchemeId, p: DetParams, blocks: u32, seed: u64) -> Result<SimResult, SimError> {
    run(scheme, p, blocks, seed).map(|(res, _)| res)
}

/// Run the scheme and return the per-block transcript.
pub fn trace(
    scheme: SchemeId,
    p: DetParams,
    blocks: u32,
    seed: u64,
) -> Result<Vec<BlockRecord>, SimError> {
    run(scheme, p, blocks, seed).map(|(_, rec)| rec)
}

fn run(
    scheme: SchemeId,
    p: DetParams,
    blocks: u32,
    seed: u64,
) -> Result<(SimResult, Vec<BlockRecord>), SimError> {
    if blocks < 2 {
        return Err(SimError::TooFewBlocks(blocks));
    }
    if !scheme.valid_for(p) {
        return Err(SimError::SchemeDomain {
            scheme: scheme.name(),
            n: p.n,
            m: p.m,
        });
    }
    let mut rng = MsgRng::new(seed);
    let (tally, records) = match scheme {
        SchemeId::WeakR2Sum => weak_r2sum(p, blocks, &mut rng),
        SchemeId::WeakSum2R => weak_sum2r(p, blocks, &mut rng),
        SchemeId::StrongRelayOnly => strong_relay_only(p, blocks, &mut rng),
        SchemeId::StrongR1Sum => strong_r1sum(p, blocks, &mut rng),
    };
    let achieved = RatePair(
        tally.u1_correct as f64 / blocks as f64,
        tally.u2_correct as f64 / blocks as f64,
    );
    let decode_ok = tally.all_correct;
    let result = SimResult {
        blocks,
        decode_ok,
        achieved,
        target: scheme.target(p),
    };
    Ok((result, records))
}

/// Running count of correctly recovered message bits per user.
struct Tally {
    u1_correct: u64,
    u2_correct: u64,
    all_correct: bool,
}

impl Tally {
    fn new() -> Self {
        Tally { u1_correct: 0, u2_correct: 0, all_correct: true }
    }
    /// Credit a decoded segment against the transmitted truth.
    fn check(&mut self, user: u8, decoded: &[u8], sent: &[u8]) {
        debug_assert_eq!(decoded.len(), sent.len());
        if decoded == sent {
            match user {
                1 => self.u1_correct += decoded.len() as u64,
                _ => self.u2_correct += decoded.len() as u64,
            }
        } else {
            self.all_correct = false;
        }
    }
}

fn record(i: u32, x1: &BitVec, x2: &BitVec, y1: &BitVec, y2: &BitVec) -> BlockRecord {
    BlockRecord {
        index: i,
        x1: x1.bit_string(),
        x2: x2.bit_string(),
        y1: y1.bit_string(),
        y2: y2.bit_string(),
        d1_decodes: Vec::new(),
        d2_decodes: Vec::new(),
    }
}

fn xor_into(dst: &mut [u8], src: &[u8]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= s;
    }
}

/// Corner `(n − m, n)`: `x2 = [relay(m), private(n−m)]`, T1 echoes the
/// previous relay segment above its own private bits.
fn weak_r2sum(p: DetParams, b: u32, rng: &mut MsgRng) -> (Tally, Vec<BlockRecord>) {
    let (n, m) = (p.n as usize, p.m as usize);
    let b = b as usize;
    let zero = BitVec::zeros(n);

    // Fresh messages. T2 is silent in block B, T1 in block 1.
    let r2: Vec<BitVec> = (0..b - 1).map(|_| rng.bits(m)).collect();
    let p2: Vec<BitVec> = (0..b - 1).map(|_| rng.bits(n - m)).collect();
    let p1: Vec<BitVec> = (0..b - 1).map(|_| rng.bits(n - m)).collect();

    let mut records = Vec::with_capacity(b);
    let mut x1s = Vec::with_capacity(b);
    let mut y1s = Vec::with_capacity(b);
    let mut y2s = Vec::with_capacity(b);
    let mut t1_relay = BitVec::zeros(m); // what T1 will retransmit next block

    for i in 0..b {
        let x1 = if i == 0 {
            zero.clone()
        } else {
            let mut v = t1_relay.0.clone();
            v.extend_from_slice(&p1[i - 1].0);
            BitVec(v)
        };
        let x2 = if i == b - 1 {
            zero.clone()
        } else {
            let mut v = r2[i].0.clone();
            v.extend_from_slice(&p2[i].0);
            BitVec(v)
        };
        let (y1, y2) = channel_output(&x1, &x2, p).unwrap();
        // Feedback: T1 reads the next relay segment off its own output.
        let sub = y1.xor(&x1);
        t1_relay = BitVec(sub.0[n - m..n].to_vec());
        records.push(record(i as u32 + 1, &x1, &x2, &y1, &y2));
        x1s.push(x1);
        y1s.push(y1);
        y2s.push(y2);
    }

    let mut tally = Tally::new();

    // D2, forward. Block 1 arrives clean; afterwards the interference is the
    // relay segment decoded one block earlier.
    let mut known_relay: Option<Vec<u8>> = None;
    for i in 0..b - 1 {
        let mut hat = y2s[i].0.clone();
        if i > 0 {
            xor_into(&mut hat[n - m..n], known_relay.as_ref().unwrap());
        }
        let (rhat, phat) = hat.split_at(m);
        tally.check(2, rhat, &r2[i].0);
        tally.check(2, phat, &p2[i].0);
        records[i].d2_decodes.push(format!("r2[{}]", i + 1));
        records[i].d2_decodes.push(format!("p2[{}]", i + 1));
        known_relay = Some(rhat.to_vec());
    }

    // D1, backward from the clean final block.
    let mut relay_above: Option<Vec<u8>> = None; // relay slot of block i+1
    for i in (1..b).rev() {
        let mut hat = y1s[i].0.clone();
        if i < b - 1 {
            // x2[i]'s top m bits are its relay segment = x1[i+1]'s slot.
            let sub = relay_above.as_ref().unwrap().clone();
            xor_into(&mut hat[n - m..n], &sub);
        }
        let (rslot, phat) = hat.split_at(m);
        tally.check(1, phat, &p1[i - 1].0);
        records[i].d1_decodes.push(format!("p1[{}]", i + 1));
        if i >= 1 {
            records[i].d1_decodes.push(format!("r2[{}]", i));
        }
        relay_above = Some(rslot.to_vec());
    }

    (tally, records)
}

/// Corner `(m, 2n − 2m)`: layout `[c, r, c, p]` with segment lengths
/// `2m − n`, `2n − 3m`, `2m − n`, `n − m`; the duplicated common copy is
/// transmitted as written.
fn weak_sum2r(p: DetParams, b: u32, rng: &mut MsgRng) -> (Tally, Vec<BlockRecord>) {
    let (n, m) = (p.n as usize, p.m as usize);
    let (lc, lr, lp) = (2 * m - n, 2 * n - 3 * m, n - m);
    let b = b as usize;
    let zero = BitVec::zeros(n);

    let c2: Vec<BitVec> = (0..b - 1).map(|_| rng.bits(lc)).collect();
    let r2: Vec<BitVec> = (0..b - 1).map(|_| rng.bits(lr)).collect();
    let p2: Vec<BitVec> = (0..b - 1).map(|_| rng.bits(lp)).collect();
    let c1: Vec<BitVec> = (0..b - 1).map(|_| rng.bits(lc)).collect();
    let p1: Vec<BitVec> = (0..b - 1).map(|_| rng.bits(lp)).collect();

    let compose = |c: &BitVec, r: &[u8], pv: &BitVec| {
        let mut v = c.0.clone();
        v.extend_from_slice(r);
        v.extend_from_slice(&c.0);
        v.extend_from_slice(&pv.0);
        BitVec(v)
    };

    let mut records = Vec::with_capacity(b);
    let mut y1s = Vec::with_capacity(b);
    let mut y2s = Vec::with_capacity(b);
    let mut t1_relay = vec![0u8; lr];

    for i in 0..b {
        let x1 = if i == 0 {
            zero.clone()
        } else {
            compose(&c1[i - 1], &t1_relay, &p1[i - 1])
        };
        let x2 = if i == b - 1 {
            zero.clone()
        } else {
            compose(&c2[i], &r2[i].0, &p2[i])
        };
        let (y1, y2) = channel_output(&x1, &x2, p).unwrap();
        let sub = y1.xor(&x1);
        // Bottom m of y1 carries [c2, r2, c2]; the relay sits after the
        // first common copy.
        t1_relay = sub.0[n - m + lc..n - m + lc + lr].to_vec();
        records.push(record(i as u32 + 1, &x1, &x2, &y1, &y2));
        y1s.push(y1);
        y2s.push(y2);
    }

    let mut tally = Tally::new();

    // D2, forward.
    let mut known_relay: Option<Vec<u8>> = None;
    for i in 0..b - 1 {
        let y = &y2s[i].0;
        let c2hat = &y[0..lc];
        let r2hat = &y[lc..lc + lr];
        // Second common copy is interfered by c1; recover c1 from it.
        let mut c1hat = y[n - m..m].to_vec();
        xor_into(&mut c1hat, c2hat);
        // Private segment sees [relay of previous block, c1].
        let mut p2hat = y[m..n].to_vec();
        if i > 0 {
            xor_into(&mut p2hat[..lr], known_relay.as_ref().unwrap());
        }
        xor_into(&mut p2hat[lr..], &c1hat);
        tally.check(2, c2hat, &c2[i].0);
        tally.check(2, r2hat, &r2[i].0);
        tally.check(2, &p2hat, &p2[i].0);
        records[i].d2_decodes.push(format!("c2[{}]", i + 1));
        records[i].d2_decodes.push(format!("r2[{}]", i + 1));
        records[i].d2_decodes.push(format!("p2[{}]", i + 1));
        known_relay = Some(r2hat.to_vec());
    }

    // D1, backward.
    let mut relay_above: Option<Vec<u8>> = None;
    for i in (1..b).rev() {
        let y = &y1s[i].0;
        let c1hat = &y[0..lc];
        let rslot = &y[lc..lc + lr]; // = r2 of block i−1
        let mut c2hat = y[n - m..m].to_vec();
        xor_into(&mut c2hat, c1hat);
        let mut p1hat = y[m..n].to_vec();
        if i < b - 1 {
            xor_into(&mut p1hat[..lr], relay_above.as_ref().unwrap());
        }
        xor_into(&mut p1hat[lr..], &c2hat);
        tally.check(1, c1hat, &c1[i - 1].0);
        tally.check(1, &p1hat, &p1[i - 1].0);
        records[i].d1_decodes.push(format!("c1[{}]", i + 1));
        records[i].d1_decodes.push(format!("p1[{}]", i + 1));
        records[i].d1_decodes.push(format!("r2[{}]", i));
        relay_above = Some(rslot.to_vec());
    }

    (tally, records)
}

/// Corner `(0, m)`: every level is relay traffic. D2's fresh arrivals on the
/// direct link collide with the retransmissions, so D2 stores its outputs
/// and unravels the chain backward from the final silent block.
fn strong_relay_only(p: DetParams, b: u32, rng: &mut MsgRng) -> (Tally, Vec<BlockRecord>) {
    let (n, m) = (p.n as usize, p.m as usize);
    let b = b as usize;
    let zero = BitVec::zeros(m);

    let r2: Vec<BitVec> = (0..b - 1).map(|_| rng.bits(m)).collect();

    let mut records = Vec::with_capacity(b);
    let mut y2s = Vec::with_capacity(b);
    let mut t1_relay = BitVec::zeros(m);

    #[allow(clippy::needless_range_loop)] // r2 is only defined up to b−1
    for i in 0..b {
        let x1 = if i == 0 { zero.clone() } else { t1_relay.clone() };
        let x2 = if i == b - 1 { zero.clone() } else { r2[i].clone() };
        let (y1, y2) = channel_output(&x1, &x2, p).unwrap();
        // T1 sees T2's vector in full once its own signal is removed.
        t1_relay = y1.xor(&x1.shifted_down(m - n));
        records.push(record(i as u32 + 1, &x1, &x2, &y1, &y2));
        y2s.push(y2);
    }

    let mut tally = Tally::new();

    // D2, backward: block B is clean; earlier blocks carry the previous
    // relay word XORed (on the bottom n levels) with the current one.
    let mut later: Option<Vec<u8>> = None; // r2 of block i (when processing block i)
    for i in (1..b).rev() {
        let mut hat = y2s[i].0.clone();
        if i < b - 1 {
            let cur = later.as_ref().unwrap();
            xor_into(&mut hat[m - n..m], &cur[..n]);
        }
        tally.check(2, &hat, &r2[i - 1].0);
        records[i].d2_decodes.push(format!("r2[{}]", i));
        later = Some(hat);
    }

    (tally, records)
}

/// Corner `(n, m − n)` for `m > 2n`: layout `[private(n), relay(m−2n),
/// zeros(n)]`; forward decoding suffices at both receivers.
fn strong_r1sum(p: DetParams, b: u32, rng: &mut MsgRng) -> (Tally, Vec<BlockRecord>) {
    let (n, m) = (p.n as usize, p.m as usize);
    let lr = m - 2 * n;
    let b = b as usize;
    let zero = BitVec::zeros(m);

    // T2 sends private bits in every block; relay bits only while a later
    // block remains to deliver them.
    let p2: Vec<BitVec> = (0..b).map(|_| rng.bits(n)).collect();
    let r2: Vec<BitVec> = (0..b - 1).map(|_| rng.bits(lr)).collect();
    let p1: Vec<BitVec> = (0..b - 1).map(|_| rng.bits(n)).collect();

    let compose = |pv: &BitVec, r: &[u8]| {
        let mut v = pv.0.clone();
        v.extend_from_slice(r);
        v.extend_from_slice(&vec![0u8; n]);
        BitVec(v)
    };

    let mut records = Vec::with_capacity(b);
    let mut y1s = Vec::with_capacity(b);
    let mut y2s = Vec::with_capacity(b);
    let mut t1_relay = vec![0u8; lr];

    for i in 0..b {
        let x1 = if i == 0 {
            zero.clone()
        } else {
            compose(&p1[i - 1], &t1_relay)
        };
        let x2 = if i == b - 1 {
            compose(&p2[i], &vec![0u8; lr])
        } else {
            compose(&p2[i], &r2[i].0)
        };
        let (y1, y2) = channel_output(&x1, &x2, p).unwrap();
        let sub = y1.xor(&x1.shifted_down(m - n));
        t1_relay = sub.0[n..m - n].to_vec();
        records.push(record(i as u32 + 1, &x1, &x2, &y1, &y2));
        y1s.push(y1);
        y2s.push(y2);
    }

    let mut tally = Tally::new();

    for i in 0..b {
        // D1: own private bits arrive clean on the bottom n levels.
        if i > 0 {
            let phat = &y1s[i].0[m - n..m];
            tally.check(1, phat, &p1[i - 1].0);
            records[i].d1_decodes.push(format!("p1[{}]", i + 1));
        }
        // D2: previous relay word plus this block's private bits.
        if i > 0 {
            let rhat = &y2s[i].0[n..m - n];
            tally.check(2, rhat, &r2[i - 1].0);
            records[i].d2_decodes.push(format!("r2[{}]", i));
        }
        let phat = &y2s[i].0[m - n..m];
        tally.check(2, phat, &p2[i].0);
        records[i].d2_decodes.push(format!("p2[{}]", i + 1));
    }

    (tally, records)
}
