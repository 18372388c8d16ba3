//! Two Boys and Three Prisoners.
//!
//! Two Boys: the answer depends on how "at least one is a boy" was learned.
//! Filtering all two-child families down to those with a boy gives 1/3; an
//! informant naming the sex of a randomly picked child gives 1/2 for "both
//! children share the named sex".
//!
//! Three Prisoners: one of A, B, C is pardoned uniformly. The warden names one of
//! B, C who will be executed, flipping a fair coin when A is pardoned. A's chance
//! stays 1/3; the other unnamed prisoner's rises to 2/3.

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::rng::RngStream;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TwoBoysProtocol {
    FilterFamilies,
    Informant,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PrisonerStrategy {
    Stay,
    Switch,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Problem {
    TwoBoys(TwoBoysProtocol),
    Prisoners(PrisonerStrategy),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sex {
    Boy,
    Girl,
}

impl Sex {
    fn from_coin(heads: bool) -> Self {
        if heads {
            Sex::Boy
        } else {
            Sex::Girl
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Prisoner {
    A,
    B,
    C,
}

/// Outcome of one family draw; `None` when the family is filtered out.
pub fn two_boys_outcome(protocol: TwoBoysProtocol, family: [Sex; 2], picked: usize) -> Option<bool> {
    match protocol {
        TwoBoysProtocol::FilterFamilies => {
            family.contains(&Sex::Boy).then(|| family == [Sex::Boy, Sex::Boy])
        }
        TwoBoysProtocol::Informant => {
            let named = family[picked];
            Some(family[0] == named && family[1] == named)
        }
    }
}

pub fn two_boys_trial(protocol: TwoBoysProtocol, rng: &mut RngStream) -> Option<bool> {
    let family = [Sex::from_coin(rng.coin()), Sex::from_coin(rng.coin())];
    let picked = match protocol {
        TwoBoysProtocol::Informant => rng.coin() as usize,
        TwoBoysProtocol::FilterFamilies => 0,
    };
    two_boys_outcome(protocol, family, picked)
}

/// Fraction of successes among the families that were kept.
pub fn two_boys(protocol: TwoBoysProtocol, trials: u64, rng: &mut RngStream) -> Result<f64> {
    check_trials(trials)?;
    let (mut kept, mut hits) = (0u64, 0u64);
    for _ in 0..trials {
        if let Some(hit) = two_boys_trial(protocol, rng) {
            kept += 1;
            hits += hit as u64;
        }
    }
    if kept == 0 {
        return Err(Error::InsufficientData { needed: 1, have: 0 });
    }
    Ok(hits as f64 / kept as f64)
}

/// The prisoner the warden names, given who is pardoned and the coin.
pub fn warden_names(pardoned: Prisoner, coin_heads: bool) -> Prisoner {
    match pardoned {
        Prisoner::A if coin_heads => Prisoner::B,
        Prisoner::A => Prisoner::C,
        Prisoner::B => Prisoner::C,
        Prisoner::C => Prisoner::B,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrisonersRound {
    pub pardoned: Prisoner,
    pub named: Prisoner,
}

impl PrisonersRound {
    pub fn wins(&self, strategy: PrisonerStrategy) -> bool {
        match strategy {
            PrisonerStrategy::Stay => self.pardoned == Prisoner::A,
            PrisonerStrategy::Switch => self.pardoned != Prisoner::A && self.pardoned != self.named,
        }
    }
}

pub fn prisoners_round(rng: &mut RngStream) -> PrisonersRound {
    let pardoned = [Prisoner::A, Prisoner::B, Prisoner::C][rng.below(3) as usize];
    let named = warden_names(pardoned, rng.coin());
    PrisonersRound { pardoned, named }
}

/// Win counts for both strategies over the same rounds.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrisonersTally {
    pub rounds: u64,
    pub stay_wins: u64,
    pub switch_wins: u64,
}

pub fn simulate_prisoners(trials: u64, rng: &mut RngStream) -> PrisonersTally {
    let mut t = PrisonersTally::default();
    for _ in 0..trials {
        let round = prisoners_round(rng);
        t.rounds += 1;
        t.stay_wins += round.wins(PrisonerStrategy::Stay) as u64;
        t.switch_wins += round.wins(PrisonerStrategy::Switch) as u64;
    }
    t
}

pub fn three_prisoners(strategy: PrisonerStrategy, trials: u64, rng: &mut RngStream) -> Result<f64> {
    check_trials(trials)?;
    let t = simulate_prisoners(trials, rng);
    let wins = match strategy {
        PrisonerStrategy::Stay => t.stay_wins,
        PrisonerStrategy::Switch => t.switch_wins,
    };
    Ok(wins as f64 / trials as f64)
}

pub fn exact_value(problem: Problem) -> Rational64 {
    match problem {
        Problem::TwoBoys(TwoBoysProtocol::FilterFamilies) => Rational64::new(1, 3),
        Problem::TwoBoys(TwoBoysProtocol::Informant) => Rational64::new(1, 2),
        Problem::Prisoners(PrisonerStrategy::Stay) => Rational64::new(1, 3),
        Problem::Prisoners(PrisonerStrategy::Switch) => Rational64::new(2, 3),
    }
}

fn check_trials(trials: u64) -> Result<()> {
    if trials == 0 {
        Err(Error::Domain("trials must be at least 1".into()))
    } else {
        Ok(())
    }
}
