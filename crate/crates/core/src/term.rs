//! Bracketed words of the free operated semigroup, one-hole contexts and the
//! structural measures the monomial orders are built on.

use std::collections::HashMap;
use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("empty word: the non-unitary setting has no empty product")]
    EmptyWord,
    #[error("context must contain exactly one hole, found {0}")]
    HoleCount(usize),
    #[error("generator `{0}` is already declared")]
    DuplicateGenerator(String),
    #[error("`{0}` is not a valid generator name")]
    InvalidGeneratorName(String),
}

/// A generator, identified by its declaration rank. Generators are ordered by rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator(pub u32);

impl Generator {
    pub fn rank(self) -> u32 {
        self.0
    }
}

const DEFAULT_NAMES: [&str; 8] = ["x", "y", "z", "w", "v", "u", "t", "s"];

/// Fallback name used when no alphabet is at hand.
pub fn default_name(g: Generator) -> String {
    DEFAULT_NAMES
        .get(g.0 as usize)
        .map(|s| s.to_string())
        .unwrap_or_else(|| format!("g{}", g.0))
}

/// Generator names in declaration order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
    index: HashMap<String, Generator>,
}

impl Alphabet {
    pub fn new() -> Self {
        Self::default()
    }

    /// The first `n` default names: x, y, z, w, ...
    pub fn standard(n: usize) -> Self {
        let mut a = Self::new();
        for i in 0..n {
            a.declare(&default_name(Generator(i as u32)))
                .expect("default names are distinct");
        }
        a
    }

    pub fn from_names<I, S>(names: I) -> Result<Self, TermError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut a = Self::new();
        for n in names {
            a.declare(n.as_ref())?;
        }
        Ok(a)
    }

    pub fn is_valid_name(name: &str) -> bool {
        let mut chars = name.chars();
        match chars.next() {
            Some(c) if c.is_alphabetic() => {}
            _ => return false,
        }
        name != "L" && chars.all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
    }

    pub fn declare(&mut self, name: &str) -> Result<Generator, TermError> {
        if !Self::is_valid_name(name) {
            return Err(TermError::InvalidGeneratorName(name.to_string()));
        }
        if self.index.contains_key(name) {
            return Err(TermError::DuplicateGenerator(name.to_string()));
        }
        let g = Generator(self.names.len() as u32);
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), g);
        Ok(g)
    }

    pub fn lookup(&self, name: &str) -> Option<Generator> {
        self.index.get(name).copied()
    }

    pub fn name(&self, g: Generator) -> String {
        self.names
            .get(g.0 as usize)
            .cloned()
            .unwrap_or_else(|| default_name(g))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn generators(&self) -> impl Iterator<Item = Generator> {
        (0..self.names.len() as u32).map(Generator)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }
}

/// A top-level factor of a word: a generator or a bracketed word.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Prime {
    Gen(Generator),
    Bracket(Word),
}

impl Prime {
    pub fn as_bracket(&self) -> Option<&Word> {
        match self {
            Prime::Bracket(w) => Some(w),
            Prime::Gen(_) => None,
        }
    }

    fn z_degree(&self) -> u32 {
        match self {
            Prime::Gen(_) => 1,
            Prime::Bracket(w) => w.0.zdeg,
        }
    }

    fn l_degree(&self) -> u32 {
        match self {
            Prime::Gen(_) => 0,
            Prime::Bracket(w) => w.0.ldeg + 1,
        }
    }

    fn depth(&self) -> u32 {
        match self {
            Prime::Gen(_) => 0,
            Prime::Bracket(w) => w.0.depth + 1,
        }
    }
}

/// A nonempty product of primes. Words are stored flattened, so structural
/// equality is word equality. The measures are cached at construction.
///
/// Cloning is cheap: the contents are shared behind an `Arc`.
#[derive(Clone)]
pub struct Word(Arc<WordData>);

struct WordData {
    primes: Vec<Prime>,
    zdeg: u32,
    ldeg: u32,
    depth: u32,
    /// Structural hash, fixed across runs.
    hash: u64,
}

fn mix(mut h: u64) -> u64 {
    // splitmix64 finalizer
    h = (h ^ (h >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    h = (h ^ (h >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    h ^ (h >> 31)
}

fn structural_hash(primes: &[Prime]) -> u64 {
    primes.iter().fold(0x9e37_79b9_7f4a_7c15, |h, p| {
        let code = match p {
            Prime::Gen(g) => u64::from(g.0) << 1,
            Prime::Bracket(w) => w.0.hash | 1,
        };
        mix(h.rotate_left(5) ^ code)
    })
}

impl PartialEq for Word {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.hash == other.0.hash && self.0.primes == other.0.primes)
    }
}

impl Eq for Word {}

impl Hash for Word {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.0.hash);
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Structural order: lexicographic on primes, generators before brackets.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        if Arc::ptr_eq(&self.0, &other.0) {
            return Ordering::Equal;
        }
        self.0.primes.cmp(&other.0.primes)
    }
}

/// All five measures of a word at once.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Measures {
    pub breadth: usize,
    pub depth: u32,
    pub z_degree: u32,
    pub l_degree: u32,
    pub l_breadth: usize,
}

impl Word {
    fn make(primes: Vec<Prime>, zdeg: u32, ldeg: u32, depth: u32) -> Self {
        let hash = structural_hash(&primes);
        Word(Arc::new(WordData {
            primes,
            zdeg,
            ldeg,
            depth,
            hash,
        }))
    }

    pub fn new(primes: Vec<Prime>) -> Result<Self, TermError> {
        if primes.is_empty() {
            return Err(TermError::EmptyWord);
        }
        Ok(Self::from_primes(primes))
    }

    /// Caller guarantees `primes` is nonempty.
    pub(crate) fn from_primes(primes: Vec<Prime>) -> Self {
        debug_assert!(!primes.is_empty());
        let mut zdeg = 0;
        let mut ldeg = 0;
        let mut depth = 0;
        for p in &primes {
            zdeg += p.z_degree();
            ldeg += p.l_degree();
            depth = depth.max(p.depth());
        }
        Word::make(primes, zdeg, ldeg, depth)
    }

    pub(crate) fn from_slice(primes: &[Prime]) -> Self {
        Self::from_primes(primes.to_vec())
    }

    pub fn gen(g: Generator) -> Self {
        Word::make(vec![Prime::Gen(g)], 1, 0, 0)
    }

    /// A bracket-free word from generators.
    pub fn from_gens(gens: &[Generator]) -> Result<Self, TermError> {
        Self::new(gens.iter().map(|&g| Prime::Gen(g)).collect())
    }

    /// `L(self)`.
    pub fn bracket(&self) -> Word {
        self.clone().into_bracket()
    }

    pub fn into_bracket(self) -> Word {
        let (zdeg, ldeg, depth) = (self.0.zdeg, self.0.ldeg + 1, self.0.depth + 1);
        Word::make(vec![Prime::Bracket(self)], zdeg, ldeg, depth)
    }

    /// `L^k(self)`.
    pub fn bracket_n(&self, k: u32) -> Word {
        let mut w = self.clone();
        for _ in 0..k {
            w = w.into_bracket();
        }
        w
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut primes = Vec::with_capacity(self.0.primes.len() + other.0.primes.len());
        primes.extend_from_slice(&self.0.primes);
        primes.extend_from_slice(&other.0.primes);
        Word::make(primes, self.0.zdeg + other.0.zdeg, self.0.ldeg + other.0.ldeg, self.0.depth.max(other.0.depth))
    }

    pub fn primes(&self) -> &[Prime] {
        &self.0.primes
    }

    pub fn breadth(&self) -> usize {
        self.0.primes.len()
    }

    pub fn depth(&self) -> u32 {
        self.0.depth
    }

    pub fn z_degree(&self) -> u32 {
        self.0.zdeg
    }

    pub fn l_degree(&self) -> u32 {
        self.0.ldeg
    }

    pub fn l_breadth(&self) -> usize {
        self.0.primes
            .iter()
            .filter(|p| matches!(p, Prime::Bracket(_)))
            .count()
    }

    pub fn is_bracket_free(&self) -> bool {
        self.0.depth == 0
    }

    /// The argument `u'` when `self = L(u')`.
    pub fn single_bracket(&self) -> Option<&Word> {
        match self.0.primes.as_slice() {
            [Prime::Bracket(w)] => Some(w),
            _ => None,
        }
    }

    pub fn measure(&self) -> Measures {
        Measures {
            breadth: self.breadth(),
            depth: self.0.depth,
            z_degree: self.0.zdeg,
            l_degree: self.0.ldeg,
            l_breadth: self.l_breadth(),
        }
    }

    pub fn l_block_decompose(&self) -> LBlockDecomposition {
        let mut outer_factors = vec![Vec::new()];
        let mut bracket_args = Vec::new();
        for p in &self.0.primes {
            match p {
                Prime::Gen(g) => outer_factors.last_mut().unwrap().push(*g),
                Prime::Bracket(w) => {
                    bracket_args.push(w.clone());
                    outer_factors.push(Vec::new());
                }
            }
        }
        LBlockDecomposition {
            outer_factors,
            bracket_args,
        }
    }

    /// The word with generators renamed by `f`.
    pub fn map_generators(&self, f: &impl Fn(Generator) -> Generator) -> Word {
        Word::from_primes(
            self.0.primes
                .iter()
                .map(|p| match p {
                    Prime::Gen(g) => Prime::Gen(f(*g)),
                    Prime::Bracket(w) => Prime::Bracket(w.map_generators(f)),
                })
                .collect(),
        )
    }

    pub fn render(&self, alphabet: &Alphabet) -> String {
        let mut s = String::new();
        render_primes(&self.0.primes, &|g| alphabet.name(g), &mut s);
        s
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        render_primes(&self.0.primes, &default_name, &mut s);
        f.write_str(&s)
    }
}

fn render_primes(primes: &[Prime], name: &dyn Fn(Generator) -> String, out: &mut String) {
    for (i, p) in primes.iter().enumerate() {
        if i > 0 {
            out.push('*');
        }
        match p {
            Prime::Gen(g) => out.push_str(&name(*g)),
            Prime::Bracket(w) => {
                let (k, inner) = peel_brackets(w);
                render_l_power(k, out);
                render_primes(inner.primes(), name, out);
                out.push(')');
            }
        }
    }
}

/// Strips nested single brackets: `L(L(u))` has inner word `L(u)`, giving (2, u).
fn peel_brackets(w: &Word) -> (u32, &Word) {
    let mut k = 1;
    let mut inner = w;
    while let Some(next) = inner.single_bracket() {
        k += 1;
        inner = next;
    }
    (k, inner)
}

fn render_l_power(k: u32, out: &mut String) {
    if k == 1 {
        out.push_str("L(");
    } else {
        out.push_str(&format!("L^{k}("));
    }
}

/// `u = u0 L(a1) u1 ... L(ar) ur` with generator-only (possibly empty) outer factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LBlockDecomposition {
    pub outer_factors: Vec<Vec<Generator>>,
    pub bracket_args: Vec<Word>,
}

impl LBlockDecomposition {
    pub fn reassemble(&self) -> Result<Word, TermError> {
        let mut primes = Vec::new();
        for (i, seg) in self.outer_factors.iter().enumerate() {
            primes.extend(seg.iter().map(|&g| Prime::Gen(g)));
            if let Some(a) = self.bracket_args.get(i) {
                primes.push(Prime::Bracket(a.clone()));
            }
        }
        Word::new(primes)
    }
}

/// One level of a context: the primes to the left and right of the hole (or of
/// the bracket containing the hole).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Frame {
    pub left: Vec<Prime>,
    pub right: Vec<Prime>,
}

/// A bracketed word with exactly one hole `⋆`.
///
/// Stored from the hole outwards: `frames[0]` surrounds the hole directly and
/// every later frame surrounds `L(...)` of the previous level.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StarWord {
    frames: Vec<Frame>,
}

/// Tree form of a context, one variant per kind of prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StarPrime {
    Gen(Generator),
    Hole,
    Bracket(Vec<StarPrime>),
}

impl StarWord {
    /// The identity context `⋆`.
    pub fn hole() -> Self {
        StarWord {
            frames: vec![Frame {
                left: Vec::new(),
                right: Vec::new(),
            }],
        }
    }

    pub(crate) fn from_frames(frames: Vec<Frame>) -> Self {
        debug_assert!(!frames.is_empty());
        StarWord { frames }
    }

    /// Builds a context from its tree, checking that exactly one hole occurs.
    pub fn from_tree(primes: &[StarPrime]) -> Result<Self, TermError> {
        fn count(ps: &[StarPrime]) -> usize {
            ps.iter()
                .map(|p| match p {
                    StarPrime::Hole => 1,
                    StarPrime::Gen(_) => 0,
                    StarPrime::Bracket(inner) => count(inner),
                })
                .sum()
        }
        fn plain(ps: &[StarPrime]) -> Result<Vec<Prime>, TermError> {
            ps.iter()
                .map(|p| match p {
                    StarPrime::Gen(g) => Ok(Prime::Gen(*g)),
                    StarPrime::Bracket(inner) => Ok(Prime::Bracket(Word::new(plain(inner)?)?)),
                    StarPrime::Hole => unreachable!("holes were counted"),
                })
                .collect()
        }
        // Collect frames from the outside in, then reverse.
        fn walk(ps: &[StarPrime], frames: &mut Vec<Frame>) -> Result<(), TermError> {
            let pos = ps
                .iter()
                .position(|p| match p {
                    StarPrime::Hole => true,
                    StarPrime::Bracket(inner) => count(inner) == 1,
                    StarPrime::Gen(_) => false,
                })
                .expect("exactly one hole");
            let left = plain(&ps[..pos])?;
            let right = plain(&ps[pos + 1..])?;
            frames.push(Frame { left, right });
            match &ps[pos] {
                StarPrime::Bracket(inner) => {
                    if inner.is_empty() {
                        return Err(TermError::EmptyWord);
                    }
                    walk(inner, frames)
                }
                _ => Ok(()),
            }
        }
        let n = count(primes);
        if n != 1 {
            return Err(TermError::HoleCount(n));
        }
        let mut frames = Vec::new();
        walk(primes, &mut frames)?;
        frames.reverse();
        Ok(StarWord { frames })
    }

    pub fn is_hole(&self) -> bool {
        self.frames.len() == 1 && self.frames[0].left.is_empty() && self.frames[0].right.is_empty()
    }

    pub fn frames(&self) -> &[Frame] {
        &self.frames
    }

    /// `q|_u`: the hole replaced by the primes of `u`.
    pub fn substitute(&self, u: &Word) -> Word {
        let mut cur: Option<Word> = None;
        for (i, fr) in self.frames.iter().enumerate() {
            let mut primes = Vec::with_capacity(fr.left.len() + fr.right.len() + u.breadth());
            primes.extend_from_slice(&fr.left);
            match cur.take() {
                None if i == 0 => primes.extend_from_slice(u.primes()),
                Some(w) => primes.push(Prime::Bracket(w)),
                None => unreachable!(),
            }
            primes.extend_from_slice(&fr.right);
            cur = Some(Word::from_primes(primes));
        }
        cur.expect("at least one frame")
    }

    /// The context `L(self)`.
    pub fn bracket(&self) -> StarWord {
        let mut frames = self.frames.clone();
        frames.push(Frame {
            left: Vec::new(),
            right: Vec::new(),
        });
        StarWord { frames }
    }

    /// `self ∘ inner`, so that `compose(inner)|u = self|(inner|u)`.
    pub fn compose(&self, inner: &StarWord) -> StarWord {
        let mut frames = inner.frames.clone();
        let last = frames.pop().expect("nonempty");
        let own_first = &self.frames[0];
        let mut left = own_first.left.clone();
        left.extend(last.left);
        let mut right = last.right;
        right.extend_from_slice(&own_first.right);
        frames.push(Frame { left, right });
        frames.extend_from_slice(&self.frames[1..]);
        StarWord { frames }
    }

    pub fn z_degree(&self) -> u32 {
        self.frames
            .iter()
            .flat_map(|f| f.left.iter().chain(&f.right))
            .map(Prime::z_degree)
            .sum()
    }

    /// Number of `L` occurrences, including those enclosing the hole.
    pub fn l_degree(&self) -> u32 {
        let own: u32 = self
            .frames
            .iter()
            .flat_map(|f| f.left.iter().chain(&f.right))
            .map(Prime::l_degree)
            .sum();
        own + self.frames.len() as u32 - 1
    }

    pub fn render(&self, alphabet: &Alphabet) -> String {
        self.render_with(&|g| alphabet.name(g))
    }

    fn render_with(&self, name: &dyn Fn(Generator) -> String) -> String {
        let mut s = String::from("⋆");
        let mut pending = 0;
        for (i, fr) in self.frames.iter().enumerate() {
            if i > 0 {
                pending += 1;
            }
            if fr.left.is_empty() && fr.right.is_empty() {
                continue;
            }
            if pending > 0 {
                s = wrap_l_power(pending, &s);
                pending = 0;
            }
            let mut next = String::new();
            if !fr.left.is_empty() {
                render_primes(&fr.left, name, &mut next);
                next.push('*');
            }
            next.push_str(&s);
            if !fr.right.is_empty() {
                next.push('*');
                render_primes(&fr.right, name, &mut next);
            }
            s = next;
        }
        if pending > 0 {
            s = wrap_l_power(pending, &s);
        }
        s
    }
}

fn wrap_l_power(k: u32, inner: &str) -> String {
    let mut s = String::new();
    render_l_power(k, &mut s);
    s.push_str(inner);
    s.push(')');
    s
}

impl fmt::Display for StarWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_with(&default_name))
    }
}

/// Order in which the sites of a word are visited when looking for redexes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Runs of the outer level first, left to right and shortest first, then
    /// the brackets left to right. Splits with the shortest first argument first.
    #[default]
    LeftmostOutermost,
    /// Brackets (left to right) before the runs of their own level.
    LeftmostInnermost,
    /// Runs starting rightmost first, then brackets right to left; splits
    /// with the longest first argument first.
    RightmostOutermost,
}

impl Strategy {
    pub fn shortest_split_first(self) -> bool {
        !matches!(self, Strategy::RightmostOutermost)
    }
}

/// A contiguous run of primes at some nesting level of a word.
#[derive(Debug)]
pub struct Site<'a> {
    path: &'a [(&'a [Prime], usize)],
    level: &'a [Prime],
    pub start: usize,
    pub end: usize,
}

impl<'a> Site<'a> {
    pub fn run(&self) -> &'a [Prime] {
        &self.level[self.start..self.end]
    }

    pub fn context(&self) -> StarWord {
        let mut frames = Vec::with_capacity(self.path.len() + 1);
        frames.push(Frame {
            left: self.level[..self.start].to_vec(),
            right: self.level[self.end..].to_vec(),
        });
        for (lvl, idx) in self.path.iter().rev() {
            frames.push(Frame {
                left: lvl[..*idx].to_vec(),
                right: lvl[idx + 1..].to_vec(),
            });
        }
        StarWord { frames }
    }

    pub fn is_root(&self) -> bool {
        self.path.is_empty() && self.start == 0 && self.end == self.level.len()
    }
}

/// Visits every contiguous run at every level of `w` in `strategy` order,
/// stopping at the first `Some` returned by `f`.
pub fn find_site<R>(
    w: &Word,
    strategy: Strategy,
    f: &mut dyn FnMut(&Site<'_>) -> Option<R>,
) -> Option<R> {
    let mut path = Vec::new();
    visit_level(w.primes(), &mut path, strategy, f)
}

fn visit_level<'a, R>(
    level: &'a [Prime],
    path: &mut Vec<(&'a [Prime], usize)>,
    strategy: Strategy,
    f: &mut dyn FnMut(&Site<'_>) -> Option<R>,
) -> Option<R> {
    let n = level.len();
    let runs = |path: &Vec<(&'a [Prime], usize)>, f: &mut dyn FnMut(&Site<'_>) -> Option<R>| {
        let starts: Box<dyn Iterator<Item = usize>> = match strategy {
            Strategy::RightmostOutermost => Box::new((0..n).rev()),
            _ => Box::new(0..n),
        };
        for start in starts {
            for end in start + 1..=n {
                let site = Site {
                    path,
                    level,
                    start,
                    end,
                };
                if let Some(r) = f(&site) {
                    return Some(r);
                }
            }
        }
        None
    };
    let children = |path: &mut Vec<(&'a [Prime], usize)>,
                        f: &mut dyn FnMut(&Site<'_>) -> Option<R>| {
        let idxs: Box<dyn Iterator<Item = usize>> = match strategy {
            Strategy::RightmostOutermost => Box::new((0..n).rev()),
            _ => Box::new(0..n),
        };
        for i in idxs {
            if let Prime::Bracket(inner) = &level[i] {
                path.push((level, i));
                let r = visit_level(inner.primes(), path, strategy, f);
                path.pop();
                if r.is_some() {
                    return r;
                }
            }
        }
        None
    };
    match strategy {
        Strategy::LeftmostInnermost => children(path, f).or_else(|| runs(path, f)),
        _ => runs(path, f).or_else(|| children(path, f)),
    }
}

/// Every context `q` with `q|_m = w`, in canonical (leftmost-outermost) order.
pub fn find_subword_contexts(w: &Word, m: &Word) -> Vec<StarWord> {
    let mut out = Vec::new();
    let len = m.breadth();
    find_site::<()>(w, Strategy::LeftmostOutermost, &mut |site| {
        if site.end - site.start == len && site.run() == m.primes() {
            out.push(site.context());
        }
        None
    });
    out
}

/// All words over `pool` with `1 <= z_degree <= max_z`, `l_degree <= max_l`
/// and `depth <= max_depth`, sorted by (z_degree, l_degree, structure).
pub fn enumerate_words(pool: &[Generator], max_z: u32, max_l: u32, max_depth: u32) -> Vec<Word> {
    let mut cache = WordTable::default();
    let mut out = Vec::new();
    for z in 1..=max_z {
        for l in 0..=max_l {
            out.extend(cache.words(pool, z, l, max_depth).iter().cloned());
        }
    }
    out
}

#[derive(Default)]
struct WordTable {
    words: HashMap<(u32, u32, u32), Vec<Word>>,
    primes: HashMap<(u32, u32, u32), Vec<Prime>>,
}

impl WordTable {
    /// Words with exactly `z` generators and `l` brackets, depth at most `d`.
    fn words(&mut self, pool: &[Generator], z: u32, l: u32, d: u32) -> Vec<Word> {
        if let Some(ws) = self.words.get(&(z, l, d)) {
            return ws.clone();
        }
        let mut out = Vec::new();
        // First prime takes (z1, l1), the rest is a word or nothing.
        for z1 in 1..=z {
            for l1 in 0..=l {
                let firsts = self.primes(pool, z1, l1, d);
                if firsts.is_empty() {
                    continue;
                }
                if z1 == z && l1 == l {
                    out.extend(firsts.iter().map(|p| Word::from_primes(vec![p.clone()])));
                }
                if z1 < z {
                    let rests = self.words(pool, z - z1, l - l1, d);
                    for p in &firsts {
                        for r in &rests {
                            let mut primes = Vec::with_capacity(1 + r.breadth());
                            primes.push(p.clone());
                            primes.extend_from_slice(r.primes());
                            out.push(Word::from_primes(primes));
                        }
                    }
                }
            }
        }
        out.sort();
        self.words.insert((z, l, d), out.clone());
        out
    }

    fn primes(&mut self, pool: &[Generator], z: u32, l: u32, d: u32) -> Vec<Prime> {
        if let Some(ps) = self.primes.get(&(z, l, d)) {
            return ps.clone();
        }
        let mut out = Vec::new();
        if z == 1 && l == 0 {
            out.extend(pool.iter().map(|&g| Prime::Gen(g)));
        }
        if l >= 1 && d >= 1 {
            for w in self.words(pool, z, l - 1, d - 1) {
                out.push(Prime::Bracket(w));
            }
        }
        self.primes.insert((z, l, d), out.clone());
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(i: u32) -> Word {
        Word::gen(Generator(i))
    }

    #[test]
    fn measures_of_mixed_word() {
        // x0 L(x1) x2 L(x3 x4) x5
        let w = Word::new(vec![
            Prime::Gen(Generator(0)),
            Prime::Bracket(g(1)),
            Prime::Gen(Generator(2)),
            Prime::Bracket(g(3).concat(&g(4))),
            Prime::Gen(Generator(5)),
        ])
        .unwrap();
        let m = w.measure();
        assert_eq!((m.l_degree, m.l_breadth), (2, 2));
        // Five top-level primes: x0, L(x1), x2, L(x3 x4), x5.
        assert_eq!((m.z_degree, m.breadth), (6, 5));
        let d = w.l_block_decompose();
        assert_eq!(
            d.outer_factors,
            vec![vec![Generator(0)], vec![Generator(2)], vec![Generator(5)]]
        );
        assert_eq!(d.reassemble().unwrap(), w);
    }

    #[test]
    fn bracket_free_measures() {
        let w = g(0).concat(&g(1)).concat(&g(2));
        let m = w.measure();
        assert_eq!(
            (m.breadth, m.depth, m.z_degree, m.l_degree, m.l_breadth),
            (3, 0, 3, 0, 0)
        );
        let d = w.l_block_decompose();
        assert_eq!(d.bracket_args.len(), 0);
        assert_eq!(d.outer_factors.len(), 1);
    }

    #[test]
    fn adjacent_brackets_leave_empty_factors() {
        let w = g(0).bracket().concat(&g(1).bracket());
        let d = w.l_block_decompose();
        assert_eq!(d.outer_factors, vec![vec![], vec![], vec![]]);
        assert_eq!(d.bracket_args, vec![g(0), g(1)]);
    }

    #[test]
    fn bracket_adds_depth() {
        let lx_y = g(0).bracket().concat(&g(1));
        assert_eq!(lx_y.bracket().depth(), 2);
        assert_eq!(lx_y.bracket().breadth(), 1);
        assert!(Word::new(vec![]).is_err());
    }

    #[test]
    fn substitution_examples() {
        let xy = g(0).concat(&g(1));
        assert_eq!(StarWord::hole().substitute(&xy), xy);
        let q = StarWord::from_tree(&[StarPrime::Bracket(vec![
            StarPrime::Hole,
            StarPrime::Gen(Generator(2)),
        ])])
        .unwrap();
        assert_eq!(q.substitute(&xy), xy.concat(&g(2)).bracket());
        assert_eq!(q.to_string(), "L(⋆*z)");
        let q2 = q.bracket();
        assert_eq!(q2.to_string(), "L^2(⋆*z)");
        let u = xy.bracket_n(2);
        assert_eq!(
            q2.substitute(&u).to_string(),
            "L^2(L^2(x*y)*z)"
        );
    }

    #[test]
    fn hole_count_is_checked() {
        assert_eq!(
            StarWord::from_tree(&[StarPrime::Gen(Generator(0))]),
            Err(TermError::HoleCount(0))
        );
        assert_eq!(
            StarWord::from_tree(&[StarPrime::Hole, StarPrime::Bracket(vec![StarPrime::Hole])]),
            Err(TermError::HoleCount(2))
        );
    }

    #[test]
    fn contexts_of_occurrences() {
        let w = g(0).bracket().concat(&g(1)).bracket();
        let cs = find_subword_contexts(&w, &g(0).bracket());
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].to_string(), "L(⋆*y)");

        let xx = g(0).concat(&g(0));
        let cs = find_subword_contexts(&xx, &g(0));
        let shown: Vec<_> = cs.iter().map(|c| c.to_string()).collect();
        assert_eq!(shown, vec!["⋆*x", "x*⋆"]);
    }

    #[test]
    fn deep_occurrence_is_unique() {
        // Exhaustive oracle: substitute every subtree position by hand.
        let l2xy = g(0).concat(&g(1)).bracket_n(2);
        let w = l2xy.concat(&g(2)).bracket_n(2);
        let cs = find_subword_contexts(&w, &l2xy);
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].substitute(&l2xy), w);
        assert_eq!(cs[0].to_string(), "L^2(⋆*z)");
    }

    #[test]
    fn compose_contexts() {
        let a = StarWord::from_tree(&[StarPrime::Gen(Generator(0)), StarPrime::Hole]).unwrap();
        let b = StarWord::hole().bracket();
        let u = g(1);
        assert_eq!(a.compose(&b).substitute(&u), a.substitute(&b.substitute(&u)));
        assert_eq!(b.compose(&a).substitute(&u), b.substitute(&a.substitute(&u)));
    }

    #[test]
    fn default_pool_count() {
        // Hand count: 3 shapes of degree 1 and 10 of degree 2, over 3 generators.
        let pool = [Generator(0), Generator(1), Generator(2)];
        let ws = enumerate_words(&pool, 2, 2, 2);
        assert_eq!(ws.len(), 3 * 3 + 10 * 9);
        let mut dedup = ws.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), ws.len());
    }

    #[test]
    fn rendering_collapses_nested_brackets() {
        let w = g(0).concat(&g(1)).bracket_n(2);
        assert_eq!(w.to_string(), "L^2(x*y)");
        let v = g(0).bracket().concat(&g(1)).bracket();
        assert_eq!(v.to_string(), "L(L(x)*y)");
    }
}
