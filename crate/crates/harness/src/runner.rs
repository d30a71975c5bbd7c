//! In-process and TCP protocol runs.

use std::io::Write;
use std::net::{TcpListener, TcpStream, ToSocketAddrs};
use std::time::{Duration, Instant};

use gzot_core::dh::DhSphf;
use gzot_core::lwe::LweSphf;
use gzot_core::ot::{derive_crs, Flow1, Flow2, Frame, Instantiation, OtContext, ReceiverState, SenderState};
use gzot_core::{Crs, MaskBytes, SphfWg};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

use crate::config::RunConfig;
use crate::error::{HarnessError, Result};

/// Either instantiation, selected at run time.
#[allow(clippy::large_enum_variant)]
pub enum AnyInst {
    Dh(DhSphf),
    Lwe(LweSphf),
}

impl AnyInst {
    pub fn load(inst: Instantiation, preset: &str) -> Result<Self> {
        Ok(match inst {
            Instantiation::Dh => AnyInst::Dh(DhSphf::preset(preset)?),
            Instantiation::Lwe => AnyInst::Lwe(LweSphf::preset(preset)?),
        })
    }
}

/// Runs `$body` with `$i` bound to the concrete instantiation.
#[macro_export]
macro_rules! with_inst {
    ($any:expr, $i:ident => $body:expr) => {
        match $any {
            $crate::runner::AnyInst::Dh($i) => $body,
            $crate::runner::AnyInst::Lwe($i) => $body,
        }
    };
}

/// Independent streams of one seed: 0 for inputs, 1 receiver, 2 sender.
pub fn party_rng(seed: u64, stream: u64) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Message length in bytes from `kappa`, the instantiation, or the
/// supplied messages, checking that they agree.
pub fn message_len<S: SphfWg>(inst: &S, cfg: &RunConfig) -> Result<usize> {
    let from_kappa = match cfg.kappa {
        Some(k) if k == 0 || k % 8 != 0 => {
            return Err(HarnessError::Config(format!("kappa = {k} is not a positive multiple of 8")))
        }
        Some(k) => Some(k / 8),
        None => None,
    };
    let given = cfg.m0.as_ref().or(cfg.m1.as_ref()).map(MaskBytes::len);
    let candidates = [inst.fixed_mask_len(), from_kappa, given];
    let mut len = None;
    for c in candidates.into_iter().flatten() {
        match len {
            Some(l) if l != c => {
                return Err(HarnessError::Config(format!(
                    "message length {c} bytes conflicts with {l} bytes"
                )))
            }
            _ => len = Some(c),
        }
    }
    Ok(len.unwrap_or(16))
}

/// `(m0, m1)` from the config, random where absent.
pub fn messages<S: SphfWg>(inst: &S, cfg: &RunConfig) -> Result<(MaskBytes, MaskBytes)> {
    let len = message_len(inst, cfg)?;
    let mut rng = party_rng(cfg.seed, 0);
    let mut pick = |m: &Option<MaskBytes>| match m {
        Some(m) if m.len() != len => Err(HarnessError::Config(format!(
            "message of {} bytes, expected {len}",
            m.len()
        ))),
        Some(m) => Ok(m.clone()),
        None => Ok(MaskBytes::random(len, &mut rng)),
    };
    Ok((pick(&cfg.m0)?, pick(&cfg.m1)?))
}

pub fn crs_for<S: SphfWg>(inst: &S, cfg: &RunConfig) -> Crs<S> {
    derive_crs(inst, cfg.sid, cfg.sigma_mode, cfg.rho_mode)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalRun {
    pub b: u8,
    pub m0: MaskBytes,
    pub m1: MaskBytes,
    pub flow1: Vec<u8>,
    pub flow2: Vec<u8>,
    pub output: MaskBytes,
}

impl LocalRun {
    pub fn transcript(&self) -> Vec<u8> {
        [self.flow1.as_slice(), &self.flow2].concat()
    }
}

/// Both parties in one process; flows pass through the wire codecs.
pub fn run_local<S: SphfWg>(inst: &S, cfg: &RunConfig) -> Result<LocalRun> {
    let (m0, m1) = messages(inst, cfg)?;
    let crs = crs_for(inst, cfg);
    let ctx = OtContext::new(inst, &crs, cfg.sid);
    let mut r_rng = party_rng(cfg.seed, 1);
    let mut s_rng = party_rng(cfg.seed, 2);

    let mut receiver = ReceiverState::new(ctx, cfg.b)?;
    let flow1 = receiver.start(&mut r_rng)?.encode();
    let flow2 = SenderState::new(ctx, m0.clone(), m1.clone())?.respond(&Flow1::decode(&flow1)?, &mut s_rng)?;
    let flow2 = flow2.encode();
    let output = receiver.finish(&Flow2::decode(&flow2)?, &mut r_rng)?;
    Ok(LocalRun { b: cfg.b, m0, m1, flow1, flow2, output })
}

fn configure(stream: &TcpStream, cfg: &RunConfig) -> Result<()> {
    let t = Some(Duration::from_secs(cfg.timeout_secs.max(1)));
    stream.set_read_timeout(t)?;
    stream.set_write_timeout(t)?;
    stream.set_nodelay(true)?;
    Ok(())
}

fn accept_within(listener: &TcpListener, timeout: Duration) -> Result<TcpStream> {
    listener.set_nonblocking(true)?;
    let deadline = Instant::now() + timeout;
    loop {
        match listener.accept() {
            Ok((stream, peer)) => {
                log::info!("accepted connection from {peer}");
                stream.set_nonblocking(false)?;
                return Ok(stream);
            }
            Err(e) if e.kind() == std::io::ErrorKind::WouldBlock => {
                if Instant::now() >= deadline {
                    return Err(HarnessError::Io(std::io::Error::new(
                        std::io::ErrorKind::TimedOut,
                        "no receiver connected before the timeout",
                    )));
                }
                std::thread::sleep(Duration::from_millis(10));
            }
            Err(e) => return Err(e.into()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ServeSummary {
    pub flow1_len: usize,
    pub flow2_len: usize,
}

/// Sender side: answers a single receiver on `listener`, then closes.
pub fn serve_on<S: SphfWg>(inst: &S, cfg: &RunConfig, listener: &TcpListener) -> Result<ServeSummary> {
    let (m0, m1) = messages(inst, cfg)?;
    let crs = crs_for(inst, cfg);
    let ctx = OtContext::new(inst, &crs, cfg.sid);
    let mut sender = SenderState::new(ctx, m0, m1)?;
    let mut stream = accept_within(listener, Duration::from_secs(cfg.timeout_secs.max(1)))?;
    configure(&stream, cfg)?;
    let frame = Frame::read_from(&mut stream)?;
    let flow1_len = frame.payload.len();
    let flow1 = Flow1::from_frame(frame)?;
    let flow2 = sender.respond(&flow1, &mut party_rng(cfg.seed, 2))?.encode();
    stream.write_all(&flow2)?;
    stream.flush()?;
    let _ = stream.shutdown(std::net::Shutdown::Both);
    Ok(ServeSummary { flow1_len, flow2_len: flow2.len() })
}

/// Receiver side: connects to `cfg.peer` and returns `m_b`.
pub fn connect<S: SphfWg>(inst: &S, cfg: &RunConfig) -> Result<MaskBytes> {
    let crs = crs_for(inst, cfg);
    let ctx = OtContext::new(inst, &crs, cfg.sid);
    let mut rng = party_rng(cfg.seed, 1);
    let mut receiver = ReceiverState::new(ctx, cfg.b)?;
    let flow1 = receiver.start(&mut rng)?;

    let timeout = Duration::from_secs(cfg.timeout_secs.max(1));
    let addr = cfg
        .peer
        .to_socket_addrs()?
        .next()
        .ok_or_else(|| HarnessError::Config(format!("cannot resolve {}", cfg.peer)))?;
    let mut stream = TcpStream::connect_timeout(&addr, timeout)?;
    configure(&stream, cfg)?;
    stream.write_all(&flow1.encode())?;
    stream.flush()?;
    let flow2 = Flow2::from_frame(Frame::read_from(&mut stream)?)?;
    Ok(receiver.finish(&flow2, &mut rng)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(text: &str) -> RunConfig {
        let mut c = RunConfig::default();
        c.apply_text(text).unwrap();
        c
    }

    #[test]
    fn local_runs_deliver_the_chosen_message() {
        for b in ["0", "1"] {
            let c = cfg(&format!("inst = dh\npreset = toy\nb = {b}\nm0 = AA\nm1 = BB\n"));
            let AnyInst::Dh(dh) = AnyInst::load(c.inst, &c.preset).unwrap() else { unreachable!() };
            let run = run_local(&dh, &c).unwrap();
            assert_eq!(run.output.to_hex(), if b == "0" { "AA" } else { "BB" });
        }
    }

    #[test]
    fn lengths_are_checked() {
        let lwe = LweSphf::preset("toy").unwrap();
        assert_eq!(message_len(&lwe, &cfg("")).unwrap(), 1);
        assert!(message_len(&lwe, &cfg("kappa = 16")).is_err());
        assert!(message_len(&lwe, &cfg("m0 = AABB")).is_err());
        let dh = DhSphf::preset("toy").unwrap();
        assert_eq!(message_len(&dh, &cfg("")).unwrap(), 16);
        assert_eq!(message_len(&dh, &cfg("kappa = 24")).unwrap(), 3);
        assert!(message_len(&dh, &cfg("kappa = 12")).is_err());
        assert!(messages(&dh, &cfg("m0 = AA\nm1 = BBCC")).is_err());
    }

    #[test]
    fn deterministic_transcripts() {
        let c = cfg("inst = dh\npreset = test\nseed = 5\nsid = 77\nb = 1");
        let dh = DhSphf::preset("test").unwrap();
        assert_eq!(run_local(&dh, &c).unwrap(), run_local(&dh, &c).unwrap());
        let mut other = c.clone();
        other.seed = 6;
        assert_ne!(run_local(&dh, &c).unwrap().flow1, run_local(&dh, &other).unwrap().flow1);
    }
}
