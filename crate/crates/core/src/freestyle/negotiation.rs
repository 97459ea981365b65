//! Alternating rule negotiation. The first player opens with a proposal; the
//! responder answers `ACCEPT` or counters with a full rule set, and the roles
//! swap until acceptance or the turn cap. An unparsable or invalid proposal
//! earns one reprompt with the error appended, then fails the negotiation;
//! failed negotiations surface upstream as flagged draws.

use crate::agents::{build_negotiation_prompt, Agent, AgentError};
use crate::kernel::PlayerSide;

use super::{grammar, RuleSet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NegotiationMessage {
    Propose(RuleSet),
    Accept,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NegotiationTurn {
    pub actor: PlayerSide,
    pub message: NegotiationMessage,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NegotiationFailure {
    #[error("negotiation cap of {cap} turns exhausted")]
    CapExhausted { cap: u32 },
    #[error("unparsable proposal from {side:?} after a reprompt: {reason}")]
    Unparsable { side: PlayerSide, reason: String },
    #[error("agent error during negotiation: {0}")]
    AgentFailed(AgentError),
}

/// Everything that was said, plus the agreed rules or the failure.
#[derive(Debug, Clone)]
pub struct NegotiationTranscript {
    pub turns: Vec<NegotiationTurn>,
    pub outcome: Result<RuleSet, NegotiationFailure>,
}

impl NegotiationTranscript {
    pub fn agreed(&self) -> Option<&RuleSet> {
        self.outcome.as_ref().ok()
    }
}

/// One message from `agent`: a proposal (opening or counter) or an accept.
/// Invalid text gets a single reprompt carrying the parse error.
fn elicit_message(
    agent: &mut dyn Agent,
    on_table: Option<&RuleSet>,
) -> Result<NegotiationMessage, NegotiationFailure> {
    let table_text = on_table.map(grammar::print);
    let base_prompt = build_negotiation_prompt(table_text.as_deref());
    let mut prompt = base_prompt.clone();
    let mut last_error = String::new();
    for _attempt in 0..2 {
        let reply = agent
            .negotiate(&prompt, on_table)
            .map_err(NegotiationFailure::AgentFailed)?;
        let trimmed = reply.trim();
        if on_table.is_some() && trimmed.eq_ignore_ascii_case("accept") {
            return Ok(NegotiationMessage::Accept);
        }
        match grammar::parse(trimmed).map_err(|e| e.to_string()).and_then(|rules| {
            rules
                .validate()
                .map_err(|e| e.to_string())
                .map(|()| rules)
        }) {
            Ok(rules) => return Ok(NegotiationMessage::Propose(rules)),
            Err(reason) => {
                last_error = reason;
                prompt = format!("{base_prompt}ERROR: {last_error}\n");
            }
        }
    }
    Err(NegotiationFailure::Unparsable {
        side: PlayerSide::First, // caller patches in the real side
        reason: last_error,
    })
}

/// Run the negotiation to acceptance or failure. `cap` bounds the total
/// number of messages exchanged.
pub fn negotiate(
    first: &mut dyn Agent,
    second: &mut dyn Agent,
    cap: u32,
) -> NegotiationTranscript {
    let mut turns: Vec<NegotiationTurn> = Vec::new();
    let mut on_table: Option<RuleSet> = None;
    let mut actor = PlayerSide::First;

    loop {
        if turns.len() as u32 >= cap {
            return NegotiationTranscript {
                turns,
                outcome: Err(NegotiationFailure::CapExhausted { cap }),
            };
        }
        let agent: &mut dyn Agent = match actor {
            PlayerSide::First => first,
            PlayerSide::Second => second,
        };
        match elicit_message(agent, on_table.as_ref()) {
            Ok(NegotiationMessage::Accept) => {
                turns.push(NegotiationTurn {
                    actor,
                    message: NegotiationMessage::Accept,
                });
                let rules = on_table.expect("accept only offered with a proposal on the table");
                return NegotiationTranscript {
                    turns,
                    outcome: Ok(rules),
                };
            }
            Ok(NegotiationMessage::Propose(rules)) => {
                turns.push(NegotiationTurn {
                    actor,
                    message: NegotiationMessage::Propose(rules.clone()),
                });
                on_table = Some(rules);
                actor = actor.opponent();
            }
            Err(mut failure) => {
                if let NegotiationFailure::Unparsable { side, .. } = &mut failure {
                    *side = actor;
                }
                return NegotiationTranscript {
                    turns,
                    outcome: Err(failure),
                };
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::agents::AgentError;
    use crate::kernel::GameState;

    /// Test negotiator with a fixed preference and a configurable stance.
    struct Stance {
        preferred: RuleSet,
        accept: bool,
    }

    impl Agent for Stance {
        fn id(&self) -> &str {
            "stance"
        }
        fn play(&mut self, _p: &str, _s: &GameState) -> Result<String, AgentError> {
            unreachable!("negotiation only")
        }
        fn negotiate(
            &mut self,
            _prompt: &str,
            on_table: Option<&RuleSet>,
        ) -> Result<String, AgentError> {
            Ok(match on_table {
                Some(rules) if self.accept || *rules == self.preferred => "ACCEPT".into(),
                _ => grammar::print(&self.preferred),
            })
        }
    }

    #[test]
    fn shared_preference_accepts_immediately() {
        let mut a = Stance {
            preferred: RuleSet::flip_game(),
            accept: false,
        };
        let mut b = Stance {
            preferred: RuleSet::flip_game(),
            accept: false,
        };
        let t = negotiate(&mut a, &mut b, 10);
        assert_eq!(t.agreed(), Some(&RuleSet::flip_game()));
        assert_eq!(t.turns.len(), 2, "one proposal, one accept");
        assert_eq!(t.turns[1].message, NegotiationMessage::Accept);
    }

    #[test]
    fn counter_then_accept_gives_three_turns() {
        // A proposes the flip game, B counters with hidden numbers, A accepts.
        let mut a = Stance {
            preferred: RuleSet::flip_game(),
            accept: true,
        };
        let mut b = Stance {
            preferred: RuleSet::hidden_numbers(),
            accept: false,
        };
        let t = negotiate(&mut a, &mut b, 10);
        assert_eq!(t.agreed(), Some(&RuleSet::hidden_numbers()));
        assert_eq!(t.turns.len(), 3);
        assert!(matches!(t.turns[0].message, NegotiationMessage::Propose(_)));
        assert!(matches!(t.turns[1].message, NegotiationMessage::Propose(_)));
        assert_eq!(t.turns[2].message, NegotiationMessage::Accept);
        assert_eq!(t.turns[2].actor, PlayerSide::First);
    }

    #[test]
    fn eternal_counters_exhaust_the_cap() {
        let mut a = Stance {
            preferred: RuleSet::flip_game(),
            accept: false,
        };
        let mut b = Stance {
            preferred: RuleSet::hidden_numbers(),
            accept: false,
        };
        let t = negotiate(&mut a, &mut b, 10);
        assert_eq!(t.turns.len(), 10);
        assert_eq!(t.outcome, Err(NegotiationFailure::CapExhausted { cap: 10 }));
    }

    #[test]
    fn garbage_proposal_fails_after_one_reprompt() {
        struct Garbage {
            calls: u32,
        }
        impl Agent for Garbage {
            fn id(&self) -> &str {
                "garbage"
            }
            fn play(&mut self, _p: &str, _s: &GameState) -> Result<String, AgentError> {
                unreachable!()
            }
            fn negotiate(
                &mut self,
                _p: &str,
                _t: Option<&RuleSet>,
            ) -> Result<String, AgentError> {
                self.calls += 1;
                Ok("not a rule set".into())
            }
        }
        let mut a = Garbage { calls: 0 };
        let mut b = Stance {
            preferred: RuleSet::flip_game(),
            accept: true,
        };
        let t = negotiate(&mut a, &mut b, 10);
        assert_eq!(a.calls, 2, "one attempt plus one reprompt");
        match t.outcome {
            Err(NegotiationFailure::Unparsable { side, .. }) => {
                assert_eq!(side, PlayerSide::First)
            }
            other => panic!("expected Unparsable, got {other:?}"),
        }
    }

    #[test]
    fn invalid_rule_sets_count_as_unparsable() {
        struct Degenerate;
        impl Agent for Degenerate {
            fn id(&self) -> &str {
                "degenerate"
            }
            fn play(&mut self, _p: &str, _s: &GameState) -> Result<String, AgentError> {
                unreachable!()
            }
            fn negotiate(
                &mut self,
                _p: &str,
                _t: Option<&RuleSet>,
            ) -> Result<String, AgentError> {
                // line of six cannot fit the 5-wide board
                Ok("PIECES: marks\nPLACEMENT: any\nEFFECT: none\nVISIBILITY: open\nTERMINATION: board-full\nWIN: line 6\n".into())
            }
        }
        let mut a = Degenerate;
        let mut b = Stance {
            preferred: RuleSet::flip_game(),
            accept: true,
        };
        let t = negotiate(&mut a, &mut b, 10);
        assert!(matches!(
            t.outcome,
            Err(NegotiationFailure::Unparsable { .. })
        ));
    }
}
