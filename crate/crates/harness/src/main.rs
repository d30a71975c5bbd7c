use std::net::TcpListener;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use gzot_core::ot::crs::crs_seed;
use gzot_core::{check_crs_consistency, RhoTrapdoor, SphfWg};
use gzot_harness::config::{Role, RunConfig, SEED_ENV};
use gzot_harness::runner::{connect, crs_for, run_local, serve_on, AnyInst};
use gzot_harness::{suites, with_inst, HarnessError, Result};
use sha2::{Digest, Sha256};

#[derive(Parser)]
#[command(name = "gzot", version, about = "Oblivious transfer from smooth projective hashing with a grey zone")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run both parties in-process and print the transcript and m_b.
    RunLocal {
        #[command(flatten)]
        opts: Opts,
        /// Print only m_b.
        #[arg(long)]
        quiet: bool,
    },
    /// Act as the sender: listen on --peer and answer one receiver.
    Serve(Opts),
    /// Act as the receiver: connect to --peer and print m_b.
    Connect(Opts),
    /// Run an estimator suite and print a JSON report line.
    Estimate {
        /// One of the suite names listed by `gzot estimate --help`.
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(suites::SUITES))]
        suite: String,
        #[command(flatten)]
        opts: Opts,
    },
    /// Derive the CRS for a session id and describe it.
    DeriveCrs {
        #[command(flatten)]
        opts: Opts,
        /// Also print the public CRS bytes in hex.
        #[arg(long)]
        full: bool,
    },
    /// Print the parameter set of a preset.
    DumpParams(Opts),
}

#[derive(Args, Clone, Default)]
struct Opts {
    /// Flat `key = value` configuration file; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Instantiation: dh or lwe.
    #[arg(long)]
    inst: Option<String>,
    /// Parameter preset: toy, test, test-full (lwe only) or demo.
    #[arg(long)]
    preset: Option<String>,
    /// Session id: 16 hex digits or a decimal integer.
    #[arg(long)]
    sid: Option<String>,
    /// Seed for all randomness; overrides GZOT_SEED.
    #[arg(long)]
    seed: Option<String>,
    /// Message length in bits.
    #[arg(long)]
    kappa: Option<String>,
    #[arg(long)]
    trials: Option<String>,
    /// Receiver choice bit.
    #[arg(long)]
    b: Option<String>,
    /// Sender message 0 in hex.
    #[arg(long)]
    m0: Option<String>,
    /// Sender message 1 in hex.
    #[arg(long)]
    m1: Option<String>,
    /// s0 or s1.
    #[arg(long)]
    sigma_mode: Option<String>,
    /// r0, r1 or r1prime.
    #[arg(long)]
    rho_mode: Option<String>,
    /// host:port to listen on (serve) or connect to (connect).
    #[arg(long, alias = "addr")]
    peer: Option<String>,
    /// Idle timeout in seconds.
    #[arg(long)]
    timeout: Option<String>,
    /// Append the JSON report line to this file.
    #[arg(long)]
    report: Option<String>,
    /// smoothness-bias word source: unchosen or uniform.
    #[arg(long)]
    words: Option<String>,
    /// kfold per-slot mixing weight.
    #[arg(long)]
    mix: Option<String>,
}

impl Opts {
    fn resolve(&self, role: Option<&str>) -> Result<RunConfig> {
        let flags = [
            ("inst", &self.inst),
            ("preset", &self.preset),
            ("sid", &self.sid),
            ("seed", &self.seed),
            ("kappa", &self.kappa),
            ("trials", &self.trials),
            ("b", &self.b),
            ("m0", &self.m0),
            ("m1", &self.m1),
            ("sigma_mode", &self.sigma_mode),
            ("rho_mode", &self.rho_mode),
            ("peer", &self.peer),
            ("timeout", &self.timeout),
            ("report", &self.report),
            ("words", &self.words),
            ("mix", &self.mix),
        ];
        let env = std::env::var(SEED_ENV).ok();
        let role = role.map(|r| ("role", r.to_string()));
        let set = flags.into_iter().filter_map(|(k, v)| v.clone().map(|v| (k, v))).chain(role);
        RunConfig::layered(self.config.as_deref(), env.as_deref(), set)
    }
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

fn describe_crs<S: SphfWg>(inst: &S, cfg: &RunConfig, full: bool) {
    let crs = crs_for(inst, cfg);
    let public = crs.public_bytes(inst);
    println!("inst {}", S::NAME);
    println!("preset {}", cfg.preset);
    println!("sid {}", cfg.sid);
    println!("modes {:?} {:?}", crs.sigma_mode, crs.rho_mode);
    println!("seed {}", hex(&crs_seed(inst, cfg.sid)));
    println!("public_len {}", public.len());
    println!("public_sha256 {}", hex(&Sha256::digest(&public)));
    println!("td_sigma {}", if crs.td_sigma.is_some() { "present" } else { "absent" });
    let td_rho = match &crs.td_rho {
        None => "absent",
        Some(RhoTrapdoor::Witnessed { .. }) => "witnessed",
        Some(RhoTrapdoor::Unwitnessed { .. }) => "unwitnessed",
    };
    println!("td_rho {td_rho}");
    println!("consistent {}", check_crs_consistency(inst, &crs));
    if full {
        println!("public {}", hex(&public));
    }
}

fn run(cmd: Cmd) -> Result<()> {
    match cmd {
        Cmd::RunLocal { opts, quiet } => {
            let cfg = opts.resolve(None)?;
            let any = AnyInst::load(cfg.inst, &cfg.preset)?;
            let out = with_inst!(&any, i => run_local(i, &cfg))?;
            if !quiet {
                println!("inst {} preset {} sid {} b {}", cfg.inst, cfg.preset, cfg.sid, out.b);
                println!("flow1 {}", hex(&out.flow1));
                println!("flow2 {}", hex(&out.flow2));
                print!("output ");
            }
            println!("{}", out.output.to_hex());
        }
        Cmd::Serve(opts) => {
            let cfg = opts.resolve(Some("sender"))?;
            let any = AnyInst::load(cfg.inst, &cfg.preset)?;
            let listener = TcpListener::bind(&cfg.peer)?;
            eprintln!("listening on {}", listener.local_addr()?);
            let summary = with_inst!(&any, i => serve_on(i, &cfg, &listener))?;
            println!("sent flow2 ({} bytes) for flow1 ({} payload bytes)", summary.flow2_len, summary.flow1_len);
        }
        Cmd::Connect(opts) => {
            let cfg = opts.resolve(Some("receiver"))?;
            debug_assert_eq!(cfg.role, Some(Role::Receiver));
            let any = AnyInst::load(cfg.inst, &cfg.preset)?;
            let m = with_inst!(&any, i => connect(i, &cfg))?;
            println!("{}", m.to_hex());
        }
        Cmd::Estimate { suite, opts } => {
            let cfg = opts.resolve(None)?;
            let report = suites::estimate(&suite, &cfg)?;
            println!("{}", report.to_json_line());
            if let Some(path) = &cfg.report {
                report.append_to(path)?;
            }
        }
        Cmd::DeriveCrs { opts, full } => {
            let cfg = opts.resolve(None)?;
            let any = AnyInst::load(cfg.inst, &cfg.preset)?;
            with_inst!(&any, i => describe_crs(i, &cfg, full));
        }
        Cmd::DumpParams(opts) => {
            let cfg = opts.resolve(None)?;
            match AnyInst::load(cfg.inst, &cfg.preset)? {
                AnyInst::Dh(dh) => {
                    let g = dh.group();
                    println!("name {}", cfg.preset);
                    println!("p {:x}", g.p());
                    println!("q {:x}", g.q());
                    println!("g {:x}", g.generator().value());
                    println!("q_bits {}", g.q().bits());
                    println!("element_bytes {}", g.element_width());
                }
                AnyInst::Lwe(lwe) => {
                    let p = lwe.params();
                    for (k, v) in p.describe() {
                        println!("{k} {v}");
                    }
                    println!("homomorphic_margin {}", p.homomorphic_margin());
                }
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse().cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(HarnessError::exit_code(&e) as u8)
        }
    }
}
