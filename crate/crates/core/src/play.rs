//! Terminal agents: a human plays one side over any line-oriented reader and
//! writer.

use std::io::{BufRead, Write};

use crate::cat::StrategyError;
use crate::graph::{Graph, Vertex};
use crate::rules::{CatMove, CatStrategy, MouseAgent, MouseKind, MouseReply, MouseView, Observation};

/// Error message used when the input ends; callers treat it as a clean exit.
pub const END_OF_INPUT: &str = "end of input";

fn read_line<R: BufRead>(input: &mut R) -> Result<Option<String>, StrategyError> {
    let mut line = String::new();
    match input.read_line(&mut line) {
        Ok(0) => Ok(None),
        Ok(_) => Ok(Some(line.trim().to_string())),
        Err(e) => Err(StrategyError::Aborted(e.to_string())),
    }
}

fn io(e: std::io::Error) -> StrategyError {
    StrategyError::Aborted(e.to_string())
}

/// Writes the adjacency lists, one vertex per line.
pub fn show_graph<W: Write>(out: &mut W, g: &Graph) -> std::io::Result<()> {
    writeln!(out, "graph with {} vertices:", g.vertex_count())?;
    for v in 0..g.vertex_count() {
        let nb: Vec<String> = g.neighbors(v).iter().map(ToString::to_string).collect();
        writeln!(out, "  {v}: {}", nb.join(" "))?;
    }
    Ok(())
}

/// A human mouse. Sees the graph and every cat vertex; must name a legal
/// position each round.
pub struct HumanMouse<R, W> {
    input: R,
    output: W,
}

impl<R: BufRead, W: Write> HumanMouse<R, W> {
    pub fn new(input: R, output: W) -> Self {
        HumanMouse { input, output }
    }

    pub fn into_output(self) -> W {
        self.output
    }
}

impl<R: BufRead, W: Write> MouseAgent for HumanMouse<R, W> {
    fn kind(&self) -> MouseKind {
        MouseKind::Concrete
    }

    fn reply(&mut self, view: &MouseView<'_>) -> Result<MouseReply, StrategyError> {
        if view.round == 1 {
            show_graph(&mut self.output, view.graph).map_err(io)?;
        }
        let legal: Vec<String> = view.legal.iter().map(ToString::to_string).collect();
        writeln!(self.output, "round {}: cat plays {}", view.round, view.cat()).map_err(io)?;
        if let Some(m) = view.position {
            writeln!(self.output, "you are on {m}").map_err(io)?;
        }
        loop {
            write!(self.output, "move to [{}]: ", legal.join(" ")).map_err(io)?;
            self.output.flush().map_err(io)?;
            let Some(line) = read_line(&mut self.input)? else {
                return Err(StrategyError::Aborted(END_OF_INPUT.into()));
            };
            match line.parse::<Vertex>() {
                Ok(v) if view.legal.contains(&v) => return Ok(MouseReply::Move(v)),
                _ => writeln!(
                    self.output,
                    "`{line}` is not a legal move; legal moves: {}",
                    legal.join(" ")
                )
                .map_err(io)?,
            }
        }
    }
}

/// A human cat. Sees only the vertex count and the feedback signals.
pub struct HumanCat<R, W> {
    n: usize,
    round: usize,
    input: R,
    output: W,
}

impl<R: BufRead, W: Write> HumanCat<R, W> {
    pub fn new(n: usize, input: R, output: W) -> Self {
        HumanCat {
            n,
            round: 0,
            input,
            output,
        }
    }

    pub fn into_output(self) -> W {
        self.output
    }
}

impl<R: BufRead, W: Write> CatStrategy for HumanCat<R, W> {
    /// Ends the game (resigns) on end of input.
    fn next_move(&mut self, last: Option<&Observation>) -> Result<CatMove, StrategyError> {
        if let Some(obs) = last {
            writeln!(self.output, "round {}: {obs}", self.round).map_err(io)?;
        }
        self.round += 1;
        loop {
            write!(self.output, "round {}: vertex [0..{}]: ", self.round, self.n - 1).map_err(io)?;
            self.output.flush().map_err(io)?;
            let Some(line) = read_line(&mut self.input)? else {
                writeln!(self.output).map_err(io)?;
                return Ok(CatMove::Resign);
            };
            match line.parse::<Vertex>() {
                Ok(v) if v < self.n => return Ok(CatMove::Play(v)),
                _ => writeln!(self.output, "`{line}` is not a vertex").map_err(io)?,
            }
        }
    }
}
