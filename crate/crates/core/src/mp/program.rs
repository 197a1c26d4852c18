use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::expr::{Expr, Feature, Side, Site};
use super::ProgramError;
use crate::extraction::{BagMode, Labeling};

/// One synchronous round: every node sums `message` over its subgraph
/// neighbors, then applies `update` to its own state and that sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layer {
    pub message: Vec<Expr>,
    pub update: Vec<Expr>,
}

impl Layer {
    pub fn new(message: Vec<Expr>, update: Vec<Expr>) -> Self {
        Layer { message, update }
    }
}

/// A fixed integer message-passing program over rooted subgraphs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MPProgram {
    pub name: String,
    pub mode: BagMode,
    /// Initial state, computed from labels only.
    pub init: Vec<Expr>,
    pub layers: Vec<Layer>,
}

/// Label requirements a program places on the subgraphs it runs on.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Requirements {
    pub branching: bool,
    pub distances: bool,
}

impl MPProgram {
    pub fn new(name: impl Into<String>, mode: BagMode) -> Self {
        MPProgram {
            name: name.into(),
            mode,
            init: Vec::new(),
            layers: Vec::new(),
        }
    }

    pub fn init(mut self, init: Vec<Expr>) -> Self {
        self.init = init;
        self
    }

    pub fn layer(mut self, message: Vec<Expr>, update: Vec<Expr>) -> Self {
        self.layers.push(Layer::new(message, update));
        self
    }

    /// Width of the final state.
    pub fn output_width(&self) -> usize {
        self.layers.last().map_or(self.init.len(), |l| l.update.len())
    }

    /// Checks that every operand is legal at its site and in range.
    pub fn validate(&self) -> Result<(), ProgramError> {
        let mut width = 0;
        check_site(&self.init, Site::Init, 0, width, 0)?;
        width = self.init.len();
        for (t, layer) in self.layers.iter().enumerate() {
            check_site(&layer.message, Site::Message, t + 1, width, 0)?;
            check_site(&layer.update, Site::Update, t + 1, width, layer.message.len())?;
            width = layer.update.len();
        }
        Ok(())
    }

    pub fn requirements(&self) -> Requirements {
        let mut req = Requirements::default();
        let mut scan = |e: &Expr| {
            if let Expr::Feat(_, f) = e {
                match f {
                    Feature::Branch | Feature::BranchAdj => req.branching = true,
                    Feature::Spd => req.distances = true,
                    Feature::SpdBranch => {
                        req.branching = true;
                        req.distances = true;
                    }
                    _ => {}
                }
            }
        };
        for e in self.init.iter().chain(
            self.layers
                .iter()
                .flat_map(|l| l.message.iter().chain(&l.update)),
        ) {
            e.walk(&mut scan);
        }
        req
    }

    pub fn supports(&self, labeling: Labeling, has_branching: bool) -> Result<(), ProgramError> {
        let req = self.requirements();
        if req.branching && !has_branching {
            return Err(ProgramError::MissingLabel("branching identifier"));
        }
        if req.distances && labeling != Labeling::Spd {
            return Err(ProgramError::MissingLabel("shortest-path distance"));
        }
        Ok(())
    }
}

fn check_site(
    exprs: &[Expr],
    site: Site,
    layer: usize,
    state_width: usize,
    message_width: usize,
) -> Result<(), ProgramError> {
    for e in exprs {
        let mut result = Ok(());
        e.walk(&mut |node| {
            if result.is_err() {
                return;
            }
            let bad_operand = |what: &'static str| ProgramError::InvalidOperand { site, layer, operand: what };
            let range = |component: usize, width: usize| {
                if component < width {
                    Ok(())
                } else {
                    Err(ProgramError::WidthMismatch {
                        site,
                        layer,
                        component,
                        width,
                    })
                }
            };
            result = match (node, site) {
                (Expr::Own(c), Site::Message | Site::Update) => range(*c, state_width),
                (Expr::Nbr(c), Site::Message) => range(*c, state_width),
                (Expr::Msg(c), Site::Update) => range(*c, message_width),
                (Expr::Own(_), _) => Err(bad_operand("own")),
                (Expr::Nbr(_), _) => Err(bad_operand("nbr")),
                (Expr::Msg(_), _) => Err(bad_operand("msg")),
                (Expr::Pool(_), Site::Readout) => Ok(()),
                (Expr::Pool(_), _) => Err(bad_operand("pool")),
                (Expr::Feat(Side::Nbr, _), Site::Message) => Ok(()),
                (Expr::Feat(Side::Nbr, _), _) => Err(bad_operand("other")),
                (Expr::Feat(Side::Own, _), Site::Readout) => Err(bad_operand("self")),
                (Expr::EdgeAttr, Site::Message) => Ok(()),
                (Expr::EdgeAttr, _) => Err(bad_operand("edge-attr")),
                _ => Ok(()),
            };
        });
        result?;
    }
    Ok(())
}

/// Nodes of a subgraph that a readout pools over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scope {
    All,
    Root,
    RootNeighbors,
    BranchNeighbors,
}

/// Sum of one final-state component over a scope.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Pool {
    pub component: usize,
    pub scope: Scope,
}

/// Subgraph, node and graph readouts.
///
/// Each subgraph's pooled sums are combined by `combine` (an expression
/// over `Pool(index)`). Node mode assigns that value to the root; pair mode
/// treats it as the edge value `h_ij` and sums it over branching nodes. The
/// node value is then divided exactly by `node_divisor`, and the graph value
/// is the node sum divided exactly by `graph_divisor`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Readout {
    pub name: String,
    pub pools: Vec<Pool>,
    pub combine: Expr,
    pub node_divisor: i64,
    pub graph_divisor: i64,
}

impl Readout {
    pub fn sum(name: impl Into<String>, component: usize, scope: Scope) -> Self {
        Readout {
            name: name.into(),
            pools: alloc::vec![Pool { component, scope }],
            combine: Expr::Pool(0),
            node_divisor: 1,
            graph_divisor: 1,
        }
    }

    pub fn combined(name: impl Into<String>, pools: Vec<Pool>, combine: Expr) -> Self {
        Readout {
            name: name.into(),
            pools,
            combine,
            node_divisor: 1,
            graph_divisor: 1,
        }
    }

    pub fn per_node(mut self, divisor: i64) -> Self {
        self.node_divisor = divisor;
        self
    }

    pub fn per_graph(mut self, divisor: i64) -> Self {
        self.graph_divisor = divisor;
        self
    }

    pub fn validate(&self, state_width: usize) -> Result<(), ProgramError> {
        for p in &self.pools {
            if p.component >= state_width {
                return Err(ProgramError::WidthMismatch {
                    site: Site::Readout,
                    layer: 0,
                    component: p.component,
                    width: state_width,
                });
            }
        }
        let mut result = Ok(());
        self.combine.walk(&mut |e| match e {
            Expr::Pool(i) if *i >= self.pools.len() => {
                result = Err(ProgramError::WidthMismatch {
                    site: Site::Readout,
                    layer: 0,
                    component: *i,
                    width: self.pools.len(),
                })
            }
            Expr::Pool(_) | Expr::Const(_) | Expr::Add(..) | Expr::Sub(..) | Expr::Mul(..)
            | Expr::NonZero(_) | Expr::Positive(_) => {}
            _ => {
                result = Err(ProgramError::InvalidOperand {
                    site: Site::Readout,
                    layer: 0,
                    operand: "non-pool operand",
                })
            }
        });
        result?;
        if self.node_divisor <= 0 || self.graph_divisor <= 0 {
            return Err(ProgramError::NonPositiveDivisor);
        }
        Ok(())
    }
}

fn write_list(f: &mut fmt::Formatter<'_>, exprs: &[Expr]) -> fmt::Result {
    f.write_str("[")?;
    for e in exprs {
        write!(f, " {e}")?;
    }
    f.write_str(" ]")
}

/// One line per layer:
///
/// ```text
/// program <name> <node|pair>
/// init [ <expr> ... ]
/// layer [ <message expr> ... ] -> [ <update expr> ... ]
/// ```
impl fmt::Display for MPProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mode = match self.mode {
            BagMode::Node => "node",
            BagMode::Pair => "pair",
        };
        writeln!(f, "program {} {mode}", self.name)?;
        f.write_str("init ")?;
        write_list(f, &self.init)?;
        for layer in &self.layers {
            f.write_str("\nlayer ")?;
            write_list(f, &layer.message)?;
            f.write_str(" -> ")?;
            write_list(f, &layer.update)?;
        }
        Ok(())
    }
}
