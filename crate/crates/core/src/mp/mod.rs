//! Deterministic integer message passing over rooted subgraphs.
//!
//! Layers are synchronous: every state at layer `t + 1` is computed from
//! layer `t` only. All arithmetic is checked; overflow is an error.

mod expr;
mod program;
mod text;

use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

pub use expr::{c, feat, msg, nbr, nonzero, not, own, pool, positive, Expr, Feature, Side, Site};
pub use program::{Layer, MPProgram, Pool, Readout, Requirements, Scope};
pub use text::ParseProgramError;

use crate::exec::{try_map, Executor, Sequential};
use crate::extraction::{BagMode, RootedSubgraph, SubgraphBag};
use crate::graph::NodeId;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProgramError {
    #[error("{site} expression in layer {layer} reads component {component} of width {width}")]
    WidthMismatch {
        site: Site,
        layer: usize,
        component: usize,
        width: usize,
    },
    #[error("operand `{operand}` is not allowed in {site} expressions (layer {layer})")]
    InvalidOperand {
        site: Site,
        layer: usize,
        operand: &'static str,
    },
    #[error("program needs a {0} label the subgraph does not carry")]
    MissingLabel(&'static str),
    #[error("readout divisors must be positive")]
    NonPositiveDivisor,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error(transparent)]
    Program(#[from] ProgramError),
    #[error("integer overflow in {0} expression")]
    Overflow(Site),
    #[error("distance feature read on a node unreachable from the root")]
    UnreachableDistance,
    #[error("program expects {program:?} subgraphs but the bag holds {bag:?} subgraphs")]
    ModeMismatch { program: BagMode, bag: BagMode },
    #[error("{value} is not divisible by {divisor}")]
    Inexact { value: i64, divisor: i64 },
}

/// Per-node integer states of one subgraph after some layer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateTensor {
    layer: usize,
    width: usize,
    data: Vec<i64>,
}

impl StateTensor {
    pub fn layer(&self) -> usize {
        self.layer
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn node_count(&self) -> usize {
        self.data.len().checked_div(self.width).unwrap_or(0)
    }

    #[inline]
    pub fn row(&self, local: usize) -> &[i64] {
        &self.data[local * self.width..(local + 1) * self.width]
    }

    pub fn get(&self, local: usize, component: usize) -> i64 {
        self.row(local)[component]
    }
}

#[derive(Clone, Copy)]
struct Ctx<'a> {
    sub: &'a RootedSubgraph,
    site: Site,
    own: usize,
    own_state: &'a [i64],
    nbr: usize,
    nbr_state: &'a [i64],
    edge_attr: i64,
    msg: &'a [i64],
    pool: &'a [i64],
}

fn feature(sub: &RootedSubgraph, local: usize, f: Feature) -> Result<i64, EvalError> {
    let l = &sub.labels()[local];
    let dist = |d: Option<crate::graph::Distance>| {
        d.and_then(|d| d.finite())
            .map(i64::from)
            .ok_or(EvalError::UnreachableDistance)
    };
    Ok(match f {
        Feature::Root => l.is_root as i64,
        Feature::Branch => l.is_branch as i64,
        Feature::RootAdj => l.root_adj as i64,
        Feature::BranchAdj => l.branch_adj as i64,
        Feature::Spd => dist(Some(l.spd_root))?,
        Feature::SpdBranch => dist(l.spd_branch)?,
        Feature::Attr(c) => sub.structure().node_attrs(local).get(c).copied().unwrap_or(0),
    })
}

fn eval(e: &Expr, ctx: &Ctx<'_>) -> Result<i64, EvalError> {
    let overflow = || EvalError::Overflow(ctx.site);
    Ok(match e {
        Expr::Const(v) => *v,
        Expr::Own(c) => ctx.own_state[*c],
        Expr::Nbr(c) => ctx.nbr_state[*c],
        Expr::Msg(c) => ctx.msg[*c],
        Expr::Pool(c) => ctx.pool[*c],
        Expr::Feat(Side::Own, f) => feature(ctx.sub, ctx.own, *f)?,
        Expr::Feat(Side::Nbr, f) => feature(ctx.sub, ctx.nbr, *f)?,
        Expr::EdgeAttr => ctx.edge_attr,
        Expr::Add(a, b) => eval(a, ctx)?.checked_add(eval(b, ctx)?).ok_or_else(overflow)?,
        Expr::Sub(a, b) => eval(a, ctx)?.checked_sub(eval(b, ctx)?).ok_or_else(overflow)?,
        Expr::Mul(a, b) => {
            let x = eval(a, ctx)?;
            // short-circuit keeps masked-out terms from overflowing
            if x == 0 {
                0
            } else {
                x.checked_mul(eval(b, ctx)?).ok_or_else(overflow)?
            }
        }
        Expr::NonZero(a) => (eval(a, ctx)? != 0) as i64,
        Expr::Positive(a) => (eval(a, ctx)? > 0) as i64,
    })
}

/// Runs `prog` on one rooted subgraph and returns the final-layer states.
pub fn run_program(sub: &RootedSubgraph, prog: &MPProgram) -> Result<StateTensor, EvalError> {
    prog.validate()?;
    prog.supports(sub.labeling(), sub.branching().is_some())?;
    run_unchecked(sub, prog)
}

fn run_unchecked(sub: &RootedSubgraph, prog: &MPProgram) -> Result<StateTensor, EvalError> {
    let n = sub.len();
    let local = sub.structure();
    let mut ctx = Ctx {
        sub,
        site: Site::Init,
        own: 0,
        own_state: &[],
        nbr: 0,
        nbr_state: &[],
        edge_attr: 0,
        msg: &[],
        pool: &[],
    };
    let mut width = prog.init.len();
    let mut state = Vec::with_capacity(n * width);
    for k in 0..n {
        ctx.own = k;
        for e in &prog.init {
            state.push(eval(e, &ctx)?);
        }
    }

    let mut sums = Vec::new();
    for layer in &prog.layers {
        let mw = layer.message.len();
        sums.clear();
        sums.resize(n * mw, 0i64);
        if mw > 0 {
            let mut ctx = Ctx {
                site: Site::Message,
                ..ctx
            };
            for k in 0..n {
                ctx.own = k;
                ctx.own_state = &state[k * width..(k + 1) * width];
                let acc = &mut sums[k * mw..(k + 1) * mw];
                for (nth, &l) in local.neighbors(k).iter().enumerate() {
                    let l = l as usize;
                    ctx.nbr = l;
                    ctx.nbr_state = &state[l * width..(l + 1) * width];
                    ctx.edge_attr = local.edge_attr_at(k, nth);
                    for (slot, e) in acc.iter_mut().zip(&layer.message) {
                        let v = eval(e, &ctx)?;
                        *slot = slot.checked_add(v).ok_or(EvalError::Overflow(Site::Message))?;
                    }
                }
            }
        }
        let next_width = layer.update.len();
        let mut next = Vec::with_capacity(n * next_width);
        let mut ctx = Ctx {
            site: Site::Update,
            ..ctx
        };
        for k in 0..n {
            ctx.own = k;
            ctx.own_state = &state[k * width..(k + 1) * width];
            ctx.msg = &sums[k * mw..(k + 1) * mw];
            for e in &layer.update {
                next.push(eval(e, &ctx)?);
            }
        }
        state = next;
        width = next_width;
    }
    Ok(StateTensor {
        layer: prog.layers.len(),
        width,
        data: state,
    })
}

/// Results of one readout over a whole bag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BagResult {
    pub name: alloc::string::String,
    /// `((i, j), h_ij)` per ordered adjacent pair, pair mode only.
    pub edge: Option<Vec<((NodeId, NodeId), i64)>>,
    /// Node value per parent-graph node.
    pub node: Vec<i64>,
    pub graph: i64,
}

pub(crate) fn exact_div(value: i64, divisor: i64) -> Result<i64, EvalError> {
    if value % divisor == 0 {
        Ok(value / divisor)
    } else {
        Err(EvalError::Inexact { value, divisor })
    }
}

/// Runs `prog` on every subgraph of `bag`; states are returned in bag order.
pub fn run_states<E: Executor>(
    bag: &SubgraphBag,
    prog: &MPProgram,
    exec: &E,
) -> Result<Vec<StateTensor>, EvalError> {
    if bag.mode() != prog.mode {
        return Err(EvalError::ModeMismatch {
            program: prog.mode,
            bag: bag.mode(),
        });
    }
    prog.validate()?;
    if let Some(first) = bag.subgraphs().first() {
        prog.supports(first.labeling(), first.branching().is_some())?;
    }
    try_map(exec, bag.len(), |s| run_unchecked(&bag.subgraphs()[s], prog))
}

/// Applies the edge, node and graph readouts to precomputed states.
pub fn apply_readouts(
    bag: &SubgraphBag,
    states: &[StateTensor],
    readouts: &[Readout],
) -> Result<Vec<BagResult>, EvalError> {
    // an empty bag has no states to check component ranges against
    let width = states.first().map_or(usize::MAX, StateTensor::width);
    readouts
        .iter()
        .map(|r| {
            r.validate(width)?;
            apply_readout(bag, states, r)
        })
        .collect()
}

fn apply_readout(
    bag: &SubgraphBag,
    states: &[StateTensor],
    r: &Readout,
) -> Result<BagResult, EvalError> {
    let mut pooled = vec![0i64; r.pools.len()];
    let mut node = vec![0i64; bag.node_count()];
    let mut edge = (bag.mode() == BagMode::Pair).then(Vec::new);
    for (sub, st) in bag.subgraphs().iter().zip(states) {
        for (slot, p) in pooled.iter_mut().zip(&r.pools) {
            let mut acc = 0i64;
            for (k, label) in sub.labels().iter().enumerate() {
                let keep = match p.scope {
                    Scope::All => true,
                    Scope::Root => label.is_root,
                    Scope::RootNeighbors => label.root_adj,
                    Scope::BranchNeighbors => label.branch_adj,
                };
                if keep {
                    acc = acc
                        .checked_add(st.get(k, p.component))
                        .ok_or(EvalError::Overflow(Site::Readout))?;
                }
            }
            *slot = acc;
        }
        let ctx = Ctx {
            sub,
            site: Site::Readout,
            own: 0,
            own_state: &[],
            nbr: 0,
            nbr_state: &[],
            edge_attr: 0,
            msg: &[],
            pool: &pooled,
        };
        let value = eval(&r.combine, &ctx)?;
        let root = sub.root();
        node[root] = node[root]
            .checked_add(value)
            .ok_or(EvalError::Overflow(Site::Readout))?;
        if let (Some(edges), Some(j)) = (edge.as_mut(), sub.branching()) {
            edges.push(((root, j), value));
        }
    }
    let mut graph = 0i64;
    for v in node.iter_mut() {
        *v = exact_div(*v, r.node_divisor)?;
        graph = graph.checked_add(*v).ok_or(EvalError::Overflow(Site::Readout))?;
    }
    Ok(BagResult {
        name: r.name.clone(),
        edge,
        node,
        graph: exact_div(graph, r.graph_divisor)?,
    })
}

/// Runs `prog` over the bag, then applies each readout.
pub fn run_bag(
    bag: &SubgraphBag,
    prog: &MPProgram,
    readouts: &[Readout],
) -> Result<Vec<BagResult>, EvalError> {
    run_bag_with(bag, prog, readouts, &Sequential)
}

pub fn run_bag_with<E: Executor>(
    bag: &SubgraphBag,
    prog: &MPProgram,
    readouts: &[Readout],
    exec: &E,
) -> Result<Vec<BagResult>, EvalError> {
    let states = run_states(bag, prog, exec)?;
    apply_readouts(bag, &states, readouts)
}
