//! Message log of one protocol run, serialized as JSON lines
//! `{"seq":…,"sender":"A"|"B","kind":…,"payload":…}`.

use serde::{Deserialize, Serialize};

use super::bits::BitString;
use super::code::CodeSpec;
use super::hash::ToeplitzHash;
use crate::error::{Error, Result};
use crate::qmath::QubitBasis;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sender {
    A,
    B,
}

/// Syndrome information for one basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SyndromeMsg {
    pub code: CodeSpec,
    pub syndrome: BitString,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RevealMsg {
    pub i_plus: Vec<usize>,
    pub i_times: Vec<usize>,
    pub hash_plus: ToeplitzHash,
    pub hash_times: ToeplitzHash,
    /// Absent in the noiseless protocol.
    pub syndrome_plus: Option<SyndromeMsg>,
    pub syndrome_times: Option<SyndromeMsg>,
}

impl RevealMsg {
    pub fn indices(&self, basis: QubitBasis) -> &[usize] {
        match basis {
            QubitBasis::Computational => &self.i_plus,
            QubitBasis::Hadamard => &self.i_times,
        }
    }

    pub fn hash(&self, basis: QubitBasis) -> &ToeplitzHash {
        match basis {
            QubitBasis::Computational => &self.hash_plus,
            QubitBasis::Hadamard => &self.hash_times,
        }
    }

    pub fn syndrome(&self, basis: QubitBasis) -> Option<&SyndromeMsg> {
        match basis {
            QubitBasis::Computational => self.syndrome_plus.as_ref(),
            QubitBasis::Hadamard => self.syndrome_times.as_ref(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbortMsg {
    pub m_plus: usize,
    pub m_times: usize,
    pub lo: u64,
    pub hi: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "payload", rename_all = "snake_case")]
pub enum Body {
    /// Batch descriptor only; the qubits themselves are not logged.
    Qubits {
        n: usize,
    },
    /// Bit `i` set iff pulse `i` was detected.
    Report {
        received: BitString,
    },
    Reveal(RevealMsg),
    Abort(AbortMsg),
    OutputAlice {
        s_plus: BitString,
        s_times: BitString,
    },
    OutputBob {
        choice: QubitBasis,
        s_c: BitString,
    },
}

impl Body {
    fn rank(&self) -> u8 {
        match self {
            Body::Qubits { .. } => 0,
            Body::Report { .. } => 1,
            Body::Reveal(_) | Body::Abort(_) => 2,
            Body::OutputAlice { .. } => 3,
            Body::OutputBob { .. } => 4,
        }
    }

    fn sender(&self) -> Sender {
        match self {
            Body::Report { .. } | Body::OutputBob { .. } => Sender::B,
            _ => Sender::A,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Message {
    pub seq: usize,
    pub sender: Sender,
    #[serde(flatten)]
    pub body: Body,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Transcript {
    messages: Vec<Message>,
}

impl Transcript {
    pub fn new() -> Self {
        Self::default()
    }

    /// Appends a message, enforcing the order
    /// qubits → report → reveal | abort → outputs.
    pub fn push(&mut self, body: Body) -> Result<()> {
        if let Some(last) = self.messages.last() {
            let aborted = matches!(last.body, Body::Abort(_));
            if body.rank() <= last.body.rank() || (aborted && body.rank() > 2) {
                return Err(Error::Protocol(format!(
                    "message {:?} cannot follow {:?}",
                    body.rank(),
                    last.body.rank()
                )));
            }
        } else if body.rank() != 0 {
            return Err(Error::Protocol(
                "transcript must start with the qubit batch".into(),
            ));
        }
        let seq = self.messages.len();
        self.messages.push(Message {
            seq,
            sender: body.sender(),
            body,
        });
        Ok(())
    }

    pub fn messages(&self) -> &[Message] {
        &self.messages
    }

    pub fn aborted(&self) -> bool {
        self.messages
            .iter()
            .any(|m| matches!(m.body, Body::Abort(_)))
    }

    pub fn reveal(&self) -> Option<&RevealMsg> {
        self.messages.iter().find_map(|m| match &m.body {
            Body::Reveal(r) => Some(r),
            _ => None,
        })
    }

    pub fn to_jsonl(&self) -> String {
        self.messages
            .iter()
            .map(|m| serde_json::to_string(m).expect("messages serialize") + "\n")
            .collect()
    }

    pub fn from_jsonl(text: &str) -> Result<Self> {
        let mut t = Transcript::new();
        for (line_no, line) in text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty())
        {
            let m: Message = serde_json::from_str(line)
                .map_err(|e| Error::Format(format!("line {}: {e}", line_no + 1)))?;
            if m.seq != t.messages.len() || m.sender != m.body.sender() {
                return Err(Error::Format(format!(
                    "line {}: bad seq or sender",
                    line_no + 1
                )));
            }
            t.push(m.body).map_err(|e| Error::Format(e.to_string()))?;
        }
        Ok(t)
    }
}
