//! Square-ice states for the domain-wall, U-turn and off-diagonal boundaries:
//! enumeration, the map to sign matrices, vertex weights and exact partition
//! sums.

mod lattice;

use std::collections::BTreeMap;
use std::fmt;

use lattice::{completions, Step};
pub use lattice::{Boundary, VertexConfig, VertexType};

use crate::algebra::{inverse, sigma, Field};
use crate::asm::{AsmClass, AsmMatrix};
use crate::error::{Error, Result};

/// Largest `n` accepted by the enumerators and the transfer sum. The column
/// mask lives in a `u64`, and well before that the state count explodes.
pub const MAX_N: usize = 12;

/// Default ceiling on the number of states collected by [`enumerate_states`].
pub const DEFAULT_STATE_CAP: usize = 5_000_000;

/// One orientation of all edges. Tetravalent vertices are kept in walk order
/// (row-major; OS rows stop at the diagonal).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IceState {
    boundary: Boundary,
    vertices: Vec<VertexConfig>,
    /// One entry per row pair, `true` for an upward U-turn.
    uturns: Vec<bool>,
}

impl IceState {
    pub fn boundary(&self) -> Boundary {
        self.boundary
    }

    pub fn vertices(&self) -> &[VertexConfig] {
        &self.vertices
    }

    pub fn uturns(&self) -> &[bool] {
        &self.uturns
    }

    pub fn upward_uturns(&self) -> usize {
        self.uturns.iter().filter(|&&up| up).count()
    }

    /// Sign matrix of the state: DWBC gives an n×n ASM, U-turn a 2n×n UASM,
    /// OS a symmetric 2n×2n matrix with null diagonal.
    pub fn to_matrix(&self) -> AsmMatrix {
        let (rows, cols, class) = match self.boundary {
            Boundary::Dwbc(n) => (n, n, AsmClass::Asm),
            Boundary::UTurn(n) => (2 * n, n, AsmClass::Uasm),
            Boundary::Os(n) => (2 * n, 2 * n, AsmClass::Osasm),
        };
        let mut entries = vec![0i8; rows * cols];
        for v in &self.vertices {
            let e = v.vertex_type().entry();
            entries[v.row * cols + v.col] = e;
            if class == AsmClass::Osasm {
                entries[v.col * cols + v.row] = e;
            }
        }
        AsmMatrix::new(rows, cols, entries, class).expect("ice state maps to a valid matrix")
    }

    /// `H:<bits> V:<bits> U:<bits>`: right and bottom edge of each vertex in
    /// walk order (1 = right, 1 = up), then the U-turns (1 = up).
    pub fn dump(&self) -> String {
        let bits = |it: &mut dyn Iterator<Item = bool>| -> String {
            it.map(|b| if b { '1' } else { '0' }).collect()
        };
        format!(
            "H:{} V:{} U:{}",
            bits(&mut self.vertices.iter().map(|v| v.right)),
            bits(&mut self.vertices.iter().map(|v| v.bottom)),
            bits(&mut self.uturns.iter().copied()),
        )
    }
}

impl fmt::Display for IceState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.dump())
    }
}

/// Spectral parameters and crossing parameters.
///
/// DWBC and U-turn lattices read `x` (rows) and `y` (columns); the OS lattice
/// reads `u`. The unified constructor fills all three with
/// `u_{2i-1} = x_i`, `u_{2i} = y_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralAssignment<F: Field> {
    pub a: F,
    pub b: Option<F>,
    pub x: Vec<F>,
    pub y: Vec<F>,
    pub u: Vec<F>,
}

impl<F: Field> SpectralAssignment<F> {
    pub fn dwbc(a: F, x: Vec<F>, y: Vec<F>) -> Self {
        Self {
            a,
            b: None,
            x,
            y,
            u: Vec::new(),
        }
    }

    pub fn uturn(a: F, b: F, x: Vec<F>, y: Vec<F>) -> Self {
        Self {
            a,
            b: Some(b),
            x,
            y,
            u: Vec::new(),
        }
    }

    pub fn os(a: F, u: Vec<F>) -> Self {
        Self {
            a,
            b: None,
            x: Vec::new(),
            y: Vec::new(),
            u,
        }
    }

    pub fn unified(a: F, b: Option<F>, u: Vec<F>) -> Self {
        let x = u.iter().step_by(2).cloned().collect();
        let y = u.iter().skip(1).step_by(2).cloned().collect();
        Self { a, b, x, y, u }
    }

    fn check(&self, boundary: Boundary) -> Result<()> {
        let n = boundary.n();
        let lens_ok = match boundary {
            Boundary::Dwbc(_) | Boundary::UTurn(_) => self.x.len() == n && self.y.len() == n,
            Boundary::Os(_) => self.u.len() == 2 * n,
        };
        if !lens_ok {
            return Err(Error::Contract(format!(
                "spectral parameters do not fit the {} lattice of size {n}",
                boundary.name()
            )));
        }
        if matches!(boundary, Boundary::UTurn(_)) && self.b.is_none() {
            return Err(Error::Contract("U-turn weights need the parameter b".into()));
        }
        let all = self.x.iter().chain(&self.y).chain(&self.u).chain(&self.b);
        if self.a.is_zero() || all.into_iter().any(|v| v.is_zero()) {
            return Err(Error::Pole("zero spectral parameter".into()));
        }
        Ok(())
    }

    /// Spectral parameter of the tetravalent vertex at (row, col).
    fn vertex_parameter(&self, boundary: Boundary, row: usize, col: usize) -> Result<F> {
        Ok(match boundary {
            Boundary::Dwbc(_) => self.x[row].clone() * inverse(&self.y[col])?,
            Boundary::UTurn(_) => {
                let label = if row.is_multiple_of(2) {
                    self.x[row / 2].clone()
                } else {
                    inverse(&self.x[row / 2])?
                };
                label * inverse(&self.y[col])?
            }
            Boundary::Os(_) => self.u[row].clone() * self.u[col].clone(),
        })
    }
}

/// Weights of the six vertex types at one spectral parameter `z`.
#[derive(Clone, Debug)]
struct SixWeights<F> {
    /// σ(a²), types ±1.
    sign: F,
    /// σ(a·z), flow right-up or left-down.
    along: F,
    /// σ(a·z̄), flow right-down or left-up.
    across: F,
}

impl<F: Field> SixWeights<F> {
    fn new(a: &F, z: &F) -> Result<Self> {
        Ok(Self {
            sign: sigma(&(a.clone() * a.clone()))?,
            along: sigma(&(a.clone() * z.clone()))?,
            across: sigma(&(a.clone() * inverse(z)?))?,
        })
    }

    fn of(&self, t: VertexType) -> &F {
        match t {
            VertexType::Plus | VertexType::Minus => &self.sign,
            VertexType::RightUp | VertexType::LeftDown => &self.along,
            VertexType::RightDown | VertexType::LeftUp => &self.across,
        }
    }
}

/// U-turn weights of pair `i`: downward σ(b·a·x_i), upward σ(b·ā·x̄_i).
fn uturn_weights<F: Field>(p: &SpectralAssignment<F>, pair: usize) -> Result<(F, F)> {
    let b = p.b.clone().expect("checked");
    let c = p.a.clone() * p.x[pair].clone();
    let down = sigma(&(b.clone() * c.clone()))?;
    let up = sigma(&(b * inverse(&c)?))?;
    Ok((down, up))
}

/// Weight of one state: product over tetravalent vertices and U-turns.
pub fn state_weight<F: Field>(s: &IceState, p: &SpectralAssignment<F>) -> Result<F> {
    p.check(s.boundary)?;
    let mut w = F::one();
    for v in &s.vertices {
        let z = p.vertex_parameter(s.boundary, v.row, v.col)?;
        w = w * SixWeights::new(&p.a, &z)?.of(v.vertex_type()).clone();
    }
    for (pair, &up) in s.uturns.iter().enumerate() {
        let (down_w, up_w) = uturn_weights(p, pair)?;
        w = w * if up { up_w } else { down_w };
    }
    Ok(w)
}

fn check_size(boundary: Boundary) -> Result<()> {
    let n = boundary.n();
    if n == 0 {
        return Err(Error::OutOfRange("lattice size must be at least 1".into()));
    }
    if n > MAX_N {
        return Err(Error::CapExceeded {
            what: "lattice size",
            value: n,
            cap: MAX_N,
        });
    }
    Ok(())
}

/// Snapshot of the walk before a vertex choice.
#[derive(Clone, Debug)]
struct Frame {
    pos: usize,
    mask: u64,
    hl: bool,
    pending: Option<bool>,
    nturns: usize,
    choice: usize,
}

/// Depth-first stream of all states, in row-major backtracking order with
/// `(right, bottom)` completions tried in the order of [`completions`].
pub struct StateIter {
    boundary: Boundary,
    steps: Vec<Step>,
    frames: Vec<Frame>,
    pos: usize,
    mask: u64,
    hl: bool,
    pending: Option<bool>,
    vertices: Vec<VertexConfig>,
    uturns: Vec<bool>,
    started: bool,
    done: bool,
}

impl StateIter {
    pub fn new(boundary: Boundary) -> Result<Self> {
        check_size(boundary)?;
        Ok(Self {
            boundary,
            steps: boundary.steps(),
            frames: Vec::new(),
            pos: 0,
            mask: boundary.initial_vertical(),
            hl: true,
            pending: None,
            vertices: Vec::new(),
            uturns: Vec::new(),
            started: false,
            done: false,
        })
    }

    /// Apply choice `frame.choice` at a vertex step. Returns false when the
    /// choice does not exist.
    fn apply_choice(&mut self, frame: &Frame) -> bool {
        let Step::Vertex { row, col } = self.steps[frame.pos] else {
            unreachable!()
        };
        let top = frame.mask >> col & 1 == 1;
        let Some((right, bottom)) = completions(frame.hl, top).nth(frame.choice) else {
            return false;
        };
        // the frame sits on top of the stack and each frame owns one vertex
        self.vertices.truncate(self.frames.len() - 1);
        self.vertices.push(VertexConfig {
            row,
            col,
            left: frame.hl,
            right,
            top,
            bottom,
        });
        self.mask = set_bit(frame.mask, col, bottom);
        self.hl = right;
        self.pending = frame.pending;
        self.uturns.truncate(frame.nturns);
        self.pos = frame.pos + 1;
        true
    }

    /// Move to the next untried choice. False when the tree is exhausted.
    fn backtrack(&mut self) -> bool {
        while let Some(mut frame) = self.frames.pop() {
            frame.choice += 1;
            self.frames.push(frame.clone());
            if self.apply_choice(&frame) {
                return true;
            }
            self.frames.pop();
        }
        false
    }

    /// Run deterministic steps and descend until a full state is reached
    /// (true) or the current branch dies (false).
    fn descend(&mut self) -> bool {
        while self.pos < self.steps.len() {
            match self.steps[self.pos] {
                Step::RowStart => self.hl = true,
                Step::RowEnd => {
                    if self.hl {
                        return false;
                    }
                }
                Step::UTurnOpen => self.pending = Some(self.hl),
                Step::UTurnClose { .. } => {
                    let upper = self.pending.take().expect("U-turn opened");
                    if upper == self.hl {
                        return false;
                    }
                    // upper edge pointing left means flow enters the upper row
                    self.uturns.push(!upper);
                }
                Step::Corner { col } => self.mask = set_bit(self.mask, col, self.hl),
                Step::Vertex { .. } => {
                    let frame = Frame {
                        pos: self.pos,
                        mask: self.mask,
                        hl: self.hl,
                        pending: self.pending,
                        nturns: self.uturns.len(),
                        choice: 0,
                    };
                    self.frames.push(frame.clone());
                    if !self.apply_choice(&frame) {
                        self.frames.pop();
                        return false;
                    }
                    continue;
                }
            }
            self.pos += 1;
        }
        self.mask == 0
    }
}

fn set_bit(mask: u64, bit: usize, on: bool) -> u64 {
    if on {
        mask | 1 << bit
    } else {
        mask & !(1 << bit)
    }
}

impl Iterator for StateIter {
    type Item = IceState;

    fn next(&mut self) -> Option<IceState> {
        if self.done {
            return None;
        }
        let mut alive = if self.started {
            self.backtrack()
        } else {
            self.started = true;
            true
        };
        while alive {
            if self.descend() {
                return Some(IceState {
                    boundary: self.boundary,
                    vertices: self.vertices.clone(),
                    uturns: self.uturns.clone(),
                });
            }
            alive = self.backtrack();
        }
        self.done = true;
        None
    }
}

/// All states, failing once more than `cap` have been produced.
pub fn enumerate_states(boundary: Boundary, cap: usize) -> Result<Vec<IceState>> {
    let mut out = Vec::new();
    for s in StateIter::new(boundary)? {
        if out.len() == cap {
            return Err(Error::CapExceeded {
                what: "ice states",
                value: cap + 1,
                cap,
            });
        }
        out.push(s);
    }
    Ok(out)
}

/// Partition sum by a transfer walk over the lattice. The frontier is keyed
/// by (vertical mask, incoming horizontal edge, pending U-turn edge), so the
/// cost grows with the number of frontiers rather than the number of states.
pub fn partition_sum<F: Field>(boundary: Boundary, p: &SpectralAssignment<F>) -> Result<F> {
    check_size(boundary)?;
    p.check(boundary)?;
    type Key = (u64, bool, Option<bool>);
    let mut frontier: BTreeMap<Key, F> = BTreeMap::new();
    frontier.insert((boundary.initial_vertical(), true, None), F::one());
    for step in boundary.steps() {
        let mut next: BTreeMap<Key, F> = BTreeMap::new();
        let mut add = |k: Key, w: F| {
            let slot = next.entry(k).or_insert_with(F::zero);
            *slot = slot.clone() + w;
        };
        match step {
            Step::Vertex { row, col } => {
                let six = SixWeights::new(&p.a, &p.vertex_parameter(boundary, row, col)?)?;
                for ((mask, hl, pend), w) in frontier {
                    let top = mask >> col & 1 == 1;
                    for (right, bottom) in completions(hl, top) {
                        let v = VertexConfig {
                            row,
                            col,
                            left: hl,
                            right,
                            top,
                            bottom,
                        };
                        let wt = six.of(v.vertex_type()).clone();
                        add((set_bit(mask, col, bottom), right, pend), w.clone() * wt);
                    }
                }
            }
            Step::RowStart => {
                for ((mask, _, pend), w) in frontier {
                    add((mask, true, pend), w);
                }
            }
            Step::RowEnd => {
                for ((mask, hl, pend), w) in frontier {
                    if !hl {
                        add((mask, hl, pend), w);
                    }
                }
            }
            Step::UTurnOpen => {
                for ((mask, hl, _), w) in frontier {
                    add((mask, hl, Some(hl)), w);
                }
            }
            Step::UTurnClose { pair } => {
                let (down_w, up_w) = uturn_weights(p, pair)?;
                for ((mask, hl, pend), w) in frontier {
                    let upper = pend.expect("U-turn opened");
                    if upper == hl {
                        continue;
                    }
                    let t = if upper { down_w.clone() } else { up_w.clone() };
                    add((mask, hl, None), w * t);
                }
            }
            Step::Corner { col } => {
                for ((mask, hl, pend), w) in frontier {
                    add((set_bit(mask, col, hl), hl, pend), w);
                }
            }
        }
        frontier = next;
    }
    Ok(frontier
        .into_iter()
        .filter(|((mask, _, _), _)| *mask == 0)
        .fold(F::zero(), |acc, (_, w)| acc + w))
}

/// Partition sum as a literal sum over enumerated states. Exponential; kept
/// as the reference the transfer walk is tested against.
pub fn partition_sum_brute<F: Field>(boundary: Boundary, p: &SpectralAssignment<F>) -> Result<F> {
    let mut acc = F::zero();
    for s in StateIter::new(boundary)? {
        acc = acc + state_weight(&s, p)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat, BigRational, Cyclo6, Ring};
    use std::collections::HashSet;

    fn count(b: Boundary) -> usize {
        StateIter::new(b).unwrap().count()
    }

    #[test]
    fn state_counts() {
        assert_eq!(count(Boundary::Dwbc(1)), 1);
        assert_eq!(count(Boundary::Dwbc(3)), 7);
        assert_eq!(count(Boundary::Dwbc(4)), 42);
        assert_eq!(count(Boundary::UTurn(1)), 2);
        assert_eq!(count(Boundary::UTurn(2)), 12);
        assert_eq!(count(Boundary::Os(1)), 1);
        assert_eq!(count(Boundary::Os(2)), 3);
        assert_eq!(count(Boundary::Os(3)), 26);
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            enumerate_states(Boundary::Dwbc(4), 41),
            Err(Error::CapExceeded { .. })
        ));
        assert_eq!(enumerate_states(Boundary::Dwbc(4), 42).unwrap().len(), 42);
        assert!(StateIter::new(Boundary::Dwbc(0)).is_err());
    }

    #[test]
    fn example_state_maps_to_example_matrix() {
        let want = AsmMatrix::from_rows(
            &[&[0, 1, 0, 0], &[1, -1, 1, 0], &[0, 0, 0, 1], &[0, 1, 0, 0]],
            AsmClass::Asm,
        )
        .unwrap();
        let found: Vec<_> = StateIter::new(Boundary::Dwbc(4))
            .unwrap()
            .filter(|s| s.to_matrix() == want)
            .collect();
        assert_eq!(found.len(), 1);
    }

    #[test]
    fn matrices_are_distinct() {
        for b in [Boundary::Dwbc(4), Boundary::UTurn(2), Boundary::Os(3)] {
            let ms: HashSet<_> = StateIter::new(b).unwrap().map(|s| s.to_matrix()).collect();
            assert_eq!(ms.len(), count(b));
        }
    }

    #[test]
    fn dump_format() {
        let s = StateIter::new(Boundary::UTurn(1)).unwrap().next().unwrap();
        let d = s.dump();
        assert!(d.starts_with("H:") && d.contains(" V:") && d.contains(" U:"));
        assert_eq!(d.split(' ').nth(2).unwrap().len(), 3);
    }

    #[test]
    fn single_vertex_weight() {
        let p = SpectralAssignment::dwbc(int(2), vec![int(3)], vec![int(5)]);
        let z = partition_sum(Boundary::Dwbc(1), &p).unwrap();
        assert_eq!(z, sigma(&int(4)).unwrap());
    }

    #[test]
    fn all_ones_at_zeta6_counts_matrices() {
        let one = Cyclo6::one();
        let p = SpectralAssignment::dwbc(Cyclo6::a(), vec![one.clone(); 3], vec![one; 3]);
        let z = partition_sum(Boundary::Dwbc(3), &p).unwrap();
        let s = sigma(&Cyclo6::a()).unwrap();
        assert_eq!(z, s.pow_u(9) * Cyclo6::from_i64(7));
    }

    #[test]
    fn transfer_matches_brute_force() {
        let a = rat(3, 2);
        let x = vec![rat(2, 3), int(5), rat(7, 4)];
        let y = vec![int(3), rat(1, 2), rat(9, 5)];
        for b in [Boundary::Dwbc(3), Boundary::UTurn(2), Boundary::UTurn(3)] {
            let k = b.n();
            let p = SpectralAssignment::uturn(a.clone(), rat(4, 7), x[..k].to_vec(), y[..k].to_vec());
            assert_eq!(partition_sum(b, &p).unwrap(), partition_sum_brute(b, &p).unwrap());
        }
        let u: Vec<BigRational> = x.into_iter().chain(y).collect();
        let q = SpectralAssignment::os(a, u);
        assert_eq!(
            partition_sum(Boundary::Os(3), &q).unwrap(),
            partition_sum_brute(Boundary::Os(3), &q).unwrap()
        );
    }

    #[test]
    fn rejects_bad_assignments() {
        let p = SpectralAssignment::dwbc(int(2), vec![int(1)], vec![int(1), int(2)]);
        assert!(matches!(
            partition_sum(Boundary::Dwbc(1), &p),
            Err(Error::Contract(_))
        ));
        let p = SpectralAssignment::dwbc(int(2), vec![int(1)], vec![int(1)]);
        assert!(partition_sum(Boundary::UTurn(1), &p).is_err());
        let p = SpectralAssignment::dwbc(int(2), vec![int(0)], vec![int(1)]);
        assert!(matches!(
            partition_sum(Boundary::Dwbc(1), &p),
            Err(Error::Pole(_))
        ));
    }
}
