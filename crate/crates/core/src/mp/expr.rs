use alloc::boxed::Box;
use core::fmt;
use core::ops;

/// Which endpoint of a message an operand reads.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    /// The receiving node `k`.
    Own,
    /// The sending neighbor `l` (message expressions only).
    Nbr,
}

/// Label features available to every expression.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Feature {
    /// `1[k = i]`
    Root,
    /// `1[k = j]`, needs a branching node.
    Branch,
    /// `1[k in N(i)]`
    RootAdj,
    /// `1[k in N(j)]`, needs a branching node.
    BranchAdj,
    /// Distance to the root, needs distance labeling.
    Spd,
    /// Distance to the branching node, needs distance labeling and a branching node.
    SpdBranch,
    /// Raw node attribute component (0 when absent).
    Attr(usize),
}

/// Closed integer expression grammar for message, update and readout
/// functions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Expr {
    Const(i64),
    /// Component of the receiving node's state.
    Own(usize),
    /// Component of the sending neighbor's state.
    Nbr(usize),
    /// Component of the summed incoming messages.
    Msg(usize),
    /// Pooled value in a readout.
    Pool(usize),
    Feat(Side, Feature),
    /// Label of the edge a message travels along (0 when unlabeled).
    EdgeAttr,
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    /// `1[x != 0]`
    NonZero(Box<Expr>),
    /// `1[x > 0]`
    Positive(Box<Expr>),
}

/// Where an expression is evaluated; decides which operands are legal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Site {
    Init,
    Message,
    Update,
    Readout,
}

impl fmt::Display for Site {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Site::Init => "init",
            Site::Message => "message",
            Site::Update => "update",
            Site::Readout => "readout",
        })
    }
}

pub fn c(v: i64) -> Expr {
    Expr::Const(v)
}

pub fn own(component: usize) -> Expr {
    Expr::Own(component)
}

pub fn nbr(component: usize) -> Expr {
    Expr::Nbr(component)
}

pub fn msg(component: usize) -> Expr {
    Expr::Msg(component)
}

pub fn pool(index: usize) -> Expr {
    Expr::Pool(index)
}

pub fn feat(side: Side, feature: Feature) -> Expr {
    Expr::Feat(side, feature)
}

/// `1 - x`, the complement of an indicator.
pub fn not(x: Expr) -> Expr {
    c(1) - x
}

pub fn nonzero(x: Expr) -> Expr {
    Expr::NonZero(Box::new(x))
}

pub fn positive(x: Expr) -> Expr {
    Expr::Positive(Box::new(x))
}

impl ops::Add for Expr {
    type Output = Expr;
    fn add(self, rhs: Expr) -> Expr {
        Expr::Add(Box::new(self), Box::new(rhs))
    }
}

impl ops::Sub for Expr {
    type Output = Expr;
    fn sub(self, rhs: Expr) -> Expr {
        Expr::Sub(Box::new(self), Box::new(rhs))
    }
}

impl ops::Mul for Expr {
    type Output = Expr;
    fn mul(self, rhs: Expr) -> Expr {
        Expr::Mul(Box::new(self), Box::new(rhs))
    }
}

impl Expr {
    /// Calls `visit` on every node of the tree, parents first.
    pub fn walk(&self, visit: &mut impl FnMut(&Expr)) {
        visit(self);
        match self {
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                a.walk(visit);
                b.walk(visit);
            }
            Expr::NonZero(a) | Expr::Positive(a) => a.walk(visit),
            _ => {}
        }
    }
}

impl fmt::Display for Feature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Feature::Root => f.write_str("root"),
            Feature::Branch => f.write_str("branch"),
            Feature::RootAdj => f.write_str("root-adj"),
            Feature::BranchAdj => f.write_str("branch-adj"),
            Feature::Spd => f.write_str("spd"),
            Feature::SpdBranch => f.write_str("spd-branch"),
            Feature::Attr(c) => write!(f, "attr {c}"),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Const(v) => write!(f, "{v}"),
            Expr::Own(c) => write!(f, "(own {c})"),
            Expr::Nbr(c) => write!(f, "(nbr {c})"),
            Expr::Msg(c) => write!(f, "(msg {c})"),
            Expr::Pool(c) => write!(f, "(pool {c})"),
            Expr::Feat(Side::Own, feature) => write!(f, "(self {feature})"),
            Expr::Feat(Side::Nbr, feature) => write!(f, "(other {feature})"),
            Expr::EdgeAttr => f.write_str("edge-attr"),
            Expr::Add(a, b) => write!(f, "(+ {a} {b})"),
            Expr::Sub(a, b) => write!(f, "(- {a} {b})"),
            Expr::Mul(a, b) => write!(f, "(* {a} {b})"),
            Expr::NonZero(a) => write!(f, "(nz {a})"),
            Expr::Positive(a) => write!(f, "(pos {a})"),
        }
    }
}
