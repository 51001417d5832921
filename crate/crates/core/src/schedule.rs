//! Dynamic graphs: ordered sequences of static graphs with durations, plus
//! optional named checkpoints at cumulative times.

use crate::error::GraphError;
use crate::graph::Graph;
use crate::time::Time;

/// One static graph evolved for a fixed duration.
#[derive(Debug, Clone, PartialEq)]
pub struct Segment {
    pub graph: Graph,
    pub duration: Time,
}

/// A labeled cumulative time within a schedule.
#[derive(Debug, Clone, PartialEq)]
pub struct Checkpoint {
    pub label: String,
    pub at: Time,
}

/// A dynamic graph: the compiler's output and the walk engine's input.
#[derive(Debug, Clone, PartialEq)]
pub struct Schedule {
    n: usize,
    segments: Vec<Segment>,
    checkpoints: Vec<Checkpoint>,
}

impl Schedule {
    pub fn new(
        n: usize,
        segments: Vec<Segment>,
        checkpoints: Vec<Checkpoint>,
    ) -> Result<Schedule, GraphError> {
        let mut total = Time::ZERO;
        for seg in &segments {
            if seg.duration.is_negative() {
                return Err(GraphError::NegativeDuration);
            }
            if seg.graph.n() != n {
                return Err(GraphError::VertexCountMismatch {
                    got: seg.graph.n(),
                    expected: n,
                });
            }
            total = total + seg.duration;
        }
        let mut prev = Time::ZERO;
        let slack = 1e-9;
        for cp in &checkpoints {
            let t = cp.at.as_f64();
            if t < prev.as_f64() - slack || t > total.as_f64() + slack {
                return Err(GraphError::BadCheckpoint);
            }
            prev = cp.at;
        }
        Ok(Schedule {
            n,
            segments,
            checkpoints,
        })
    }

    pub fn empty(n: usize) -> Schedule {
        Schedule {
            n,
            segments: Vec::new(),
            checkpoints: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn checkpoints(&self) -> &[Checkpoint] {
        &self.checkpoints
    }

    /// Sum of segment durations; exact when all durations are rational
    /// multiples of pi.
    pub fn total_duration(&self) -> Time {
        self.segments
            .iter()
            .fold(Time::ZERO, |acc, s| acc + s.duration)
    }

    /// Append another schedule's segments (same vertex count), shifting its
    /// checkpoints by this schedule's current total duration.
    pub fn concat(&mut self, other: &Schedule) -> Result<(), GraphError> {
        if other.n != self.n {
            return Err(GraphError::VertexCountMismatch {
                got: other.n,
                expected: self.n,
            });
        }
        let offset = self.total_duration();
        self.segments.extend(other.segments.iter().cloned());
        for cp in &other.checkpoints {
            self.checkpoints.push(Checkpoint {
                label: cp.label.clone(),
                at: offset + cp.at,
            });
        }
        Ok(())
    }

    pub fn push_checkpoint(&mut self, label: impl Into<String>, at: Time) {
        self.checkpoints.push(Checkpoint {
            label: label.into(),
            at,
        });
    }
}
