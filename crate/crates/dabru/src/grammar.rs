//! Text forms of elements and roots.
//!
//! ```text
//! element := pi{l=<int>, nu=[<ints>], k=<int>} t[<ints>] <word>
//! word    := e | s<i> (* s<i>)*
//! root    := b[<ints>; r=<int>; n=<int>]
//! ```
//!
//! `nu` is in fundamental-coweight coordinates, `t` in simple-coroot
//! coordinates, root coordinates in simple roots. Whitespace is allowed
//! between tokens and nowhere else. Over a finite ground `l`, `k`, `t` and
//! `r` must be zero, `nu` must lie in the coroot lattice and `s0` is not a
//! generator.

use std::fmt;

use dabru_core::affine::{AffCoweight, AffRealRoot, AffineGround};
use dabru_core::daweyl::{DARoot, DARootRN, Elt, Root, WTElement};
use dabru_core::ground::{FiniteGround, Ground};
use dabru_core::linalg::IVec;
use dabru_core::rootsys::{FiniteCoweight, FiniteRoot, FiniteRootSystem, FiniteWeylElt};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError(pub String);

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error: {}", self.0)
    }
}

impl std::error::Error for ParseError {}

type PResult<T> = Result<T, ParseError>;

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn fail<T>(&self, what: &str) -> PResult<T> {
        Err(ParseError(format!("expected {what} at byte {} of {:?}", self.pos, self.src)))
    }

    fn ws(&mut self) {
        let trimmed = self.rest().trim_start_matches(' ');
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, lit: &str) -> bool {
        self.ws();
        if self.rest().starts_with(lit) {
            self.pos += lit.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, lit: &str) -> PResult<()> {
        if self.eat(lit) {
            Ok(())
        } else {
            self.fail(&format!("{lit:?}"))
        }
    }

    fn digits(&mut self) -> &'a str {
        let rest = self.rest();
        let len = rest.bytes().take_while(u8::is_ascii_digit).count();
        self.pos += len;
        &rest[..len]
    }

    fn int(&mut self) -> PResult<i64> {
        self.ws();
        let start = self.pos;
        let neg = self.rest().starts_with('-');
        if neg {
            self.pos += 1;
        }
        let d = self.digits();
        if d.is_empty() {
            self.pos = start;
            return self.fail("an integer");
        }
        let text = &self.src[start..self.pos];
        text.parse().map_err(|_| ParseError(format!("integer {text:?} out of range")))
    }

    /// `[a, b, ...]`, at least one entry.
    fn list(&mut self) -> PResult<Vec<i64>> {
        self.expect("[")?;
        let mut out = vec![self.int()?];
        while self.eat(",") {
            out.push(self.int()?);
        }
        self.expect("]")?;
        Ok(out)
    }

    fn key(&mut self, name: &str) -> PResult<i64> {
        self.expect(name)?;
        self.expect("=")?;
        self.int()
    }

    fn word(&mut self) -> PResult<Vec<usize>> {
        self.ws();
        if self.eat("e") {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        loop {
            self.expect("s")?;
            let d = self.digits();
            if d.is_empty() {
                return self.fail("a generator index");
            }
            out.push(d.parse().map_err(|_| ParseError(format!("generator index {d:?} out of range")))?);
            if !self.eat("*") {
                return Ok(out);
            }
        }
    }

    fn end(&mut self) -> PResult<()> {
        self.ws();
        if self.rest().is_empty() {
            Ok(())
        } else {
            self.fail("end of input")
        }
    }
}

/// The fields of an element before they are interpreted over a ground.
struct RawElement {
    level: i64,
    nu: Vec<i64>,
    central: i64,
    lam: Vec<i64>,
    word: Vec<usize>,
}

fn parse_raw_element(src: &str) -> PResult<RawElement> {
    let mut c = Cursor::new(src);
    c.expect("pi")?;
    c.expect("{")?;
    let level = c.key("l")?;
    c.expect(",")?;
    c.expect("nu")?;
    c.expect("=")?;
    let nu = c.list()?;
    c.expect(",")?;
    let central = c.key("k")?;
    c.expect("}")?;
    c.expect("t")?;
    let lam = c.list()?;
    let word = c.word()?;
    c.end()?;
    Ok(RawElement { level, nu, central, lam, word })
}

fn parse_raw_root(src: &str) -> PResult<(Vec<i64>, i64, i64)> {
    let mut c = Cursor::new(src);
    c.expect("b")?;
    c.expect("[")?;
    let mut coords = vec![c.int()?];
    while c.eat(",") {
        coords.push(c.int()?);
    }
    c.expect(";")?;
    let r = c.key("r")?;
    c.expect(";")?;
    let n = c.key("n")?;
    c.expect("]")?;
    c.end()?;
    Ok((coords, r, n))
}

fn vector(v: &[i64], rank: usize, what: &str) -> PResult<IVec> {
    if v.len() != rank {
        return Err(ParseError(format!("{what} has {} entries, rank is {rank}", v.len())));
    }
    Ok(IVec::from_slice(v))
}

fn positive_root(sys: &FiniteRootSystem, coords: &[i64]) -> PResult<FiniteRoot> {
    let beta = FiniteRoot(vector(coords, sys.rank(), "root")?);
    if sys.positive_index(&beta).is_none() {
        return Err(ParseError(format!("{coords:?} is not a positive root")));
    }
    Ok(beta)
}

fn join(v: &[i64]) -> String {
    v.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

/// A reduced word for `u` in `0`-based finite generator indices.
pub fn reduced_word(sys: &FiniteRootSystem, u: &FiniteWeylElt) -> Vec<usize> {
    let mut u = *u;
    let mut word = Vec::new();
    while let Some(i) = (0..sys.rank()).find(|&i| !sys.act(&u, &sys.simple_root(i)).is_positive()) {
        u = sys.mul(&u, &sys.simple_reflection(i));
        word.push(i);
    }
    word.reverse();
    word
}

fn format_word(word: &[usize]) -> String {
    if word.is_empty() {
        "e".into()
    } else {
        word.iter().map(|i| format!("s{i}")).collect::<Vec<_>>().join("*")
    }
}

fn apply_word<G: Ground>(ground: &G, start: G::Weyl, word: &[usize]) -> PResult<G::Weyl> {
    let mut w = start;
    for &i in word {
        if !ground.simple_indices().contains(&i) {
            return Err(ParseError(format!("s{i} is not a generator (allowed {:?})", ground.simple_indices())));
        }
        w = ground.weyl_mul(&w, &ground.simple_reflection(i));
    }
    Ok(w)
}

/// Parsing and printing over a particular ground.
pub trait Syntax: Ground + Sized {
    fn label(&self) -> String;
    fn parse_element(&self, src: &str) -> PResult<Elt<Self>>;
    fn format_element(&self, x: &Elt<Self>) -> String;
    fn parse_root(&self, src: &str) -> PResult<Root<Self>>;
    fn format_root(&self, g: &Root<Self>) -> String;
    /// `(θ, r)` for a ground real root `θ + rδ` (`r = 0` over a finite ground).
    fn ground_root_parts(&self, g: &Self::Root) -> (Vec<i64>, i64);
}

impl Syntax for AffineGround {
    fn label(&self) -> String {
        self.sys.label().to_string()
    }

    fn parse_element(&self, src: &str) -> PResult<Elt<AffineGround>> {
        let raw = parse_raw_element(src)?;
        let rank = self.rank();
        let nu = FiniteCoweight(vector(&raw.nu, rank, "nu")?);
        let lam = vector(&raw.lam, rank, "t")?;
        let w = apply_word(self, self.translation(lam), &raw.word)?;
        Ok(WTElement { mu: AffCoweight::new(nu, raw.level, raw.central), w })
    }

    fn format_element(&self, x: &Elt<AffineGround>) -> String {
        let rank = self.rank();
        let word: Vec<usize> = reduced_word(&self.sys, &x.w.u).into_iter().map(|i| i + 1).collect();
        format!(
            "pi{{l={},nu=[{}],k={}}} t[{}] {}",
            x.mu.level,
            join(x.mu.nu.0.coords(rank)),
            x.mu.central,
            join(x.w.lam.coords(rank)),
            format_word(&word)
        )
    }

    fn parse_root(&self, src: &str) -> PResult<Root<AffineGround>> {
        let (coords, r, n) = parse_raw_root(src)?;
        let beta = positive_root(&self.sys, &coords)?;
        Ok(DARootRN::new(beta, r, n).to_da(self))
    }

    fn format_root(&self, g: &Root<AffineGround>) -> String {
        format_rn(self, &DARootRN::from_da(self, g))
    }

    fn ground_root_parts(&self, g: &AffRealRoot) -> (Vec<i64>, i64) {
        (g.theta.0.coords(self.rank()).to_vec(), g.r)
    }
}

pub fn format_rn(g: &AffineGround, root: &DARootRN) -> String {
    format!("b[{}; r={}; n={}]", join(root.beta.0.coords(g.rank())), root.r, root.n)
}

impl Syntax for FiniteGround {
    fn label(&self) -> String {
        format!("{} (finite)", self.sys.label())
    }

    fn parse_element(&self, src: &str) -> PResult<Elt<FiniteGround>> {
        let raw = parse_raw_element(src)?;
        let rank = self.sys.rank();
        if raw.level != 0 || raw.central != 0 {
            return Err(ParseError("over a finite ground l and k must be 0".into()));
        }
        let nu = FiniteCoweight(vector(&raw.nu, rank, "nu")?);
        if self.sys.coweight_to_coroot_coords(&nu).is_none() {
            return Err(ParseError(format!("nu = {:?} is not in the coroot lattice", raw.nu)));
        }
        if !vector(&raw.lam, rank, "t")?.is_zero() {
            return Err(ParseError("over a finite ground t must be 0".into()));
        }
        let w = apply_word(self, self.weyl_id(), &raw.word)?;
        Ok(WTElement { mu: nu, w })
    }

    fn format_element(&self, x: &Elt<FiniteGround>) -> String {
        let rank = self.sys.rank();
        let word: Vec<usize> = reduced_word(&self.sys, &x.w).into_iter().map(|i| i + 1).collect();
        format!("pi{{l=0,nu=[{}],k=0}} t[{}] {}", join(x.mu.0.coords(rank)), join(&vec![0; rank]), format_word(&word))
    }

    fn parse_root(&self, src: &str) -> PResult<Root<FiniteGround>> {
        let (coords, r, n) = parse_raw_root(src)?;
        if r != 0 {
            return Err(ParseError("over a finite ground r must be 0".into()));
        }
        Ok(DARoot { beta: positive_root(&self.sys, &coords)?, n })
    }

    fn format_root(&self, g: &Root<FiniteGround>) -> String {
        format!("b[{}; r=0; n={}]", join(g.beta.0.coords(self.sys.rank())), g.n)
    }

    fn ground_root_parts(&self, g: &FiniteRoot) -> (Vec<i64>, i64) {
        (g.0.coords(self.sys.rank()).to_vec(), 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use dabru_core::length::ell;

    #[test]
    fn worked_instance_round_trip() {
        let g = AffineGround::from_label("A1").unwrap();
        let x = g.parse_element("pi{l=1,nu=[0],k=0} t[0] e").unwrap();
        assert_eq!(x.mu, AffCoweight::d());
        assert_eq!(g.format_element(&x), "pi{l=1,nu=[0],k=0} t[0] e");
        let r = g.parse_root("b[1; r=0; n=1]").unwrap();
        assert_eq!(g.format_root(&r), "b[1; r=0; n=1]");
        assert_eq!(ell(&g, &x).unwrap(), 0);
    }

    #[test]
    fn words_and_spacing() {
        let g = AffineGround::from_label("A2").unwrap();
        let x = g.parse_element("pi{ l=2 , nu=[1,-1], k=3 } t[1,0] s1*s2*s0").unwrap();
        let y = g.parse_element(&g.format_element(&x)).unwrap();
        assert_eq!(x, y);
        let r = g.parse_root("b[1,1;r=-2;n=-1]").unwrap();
        assert_eq!(g.parse_root(&g.format_root(&r)).unwrap(), r);
    }

    #[test]
    fn strictness() {
        let g = AffineGround::from_label("A1").unwrap();
        for bad in [
            "pi{l=1,nu=[0],k=0} t[0]",
            "pi{l=1,nu=[0,0],k=0} t[0] e",
            "pi{l=1,nu=[0],k=0} t[0] s2",
            "pi{l=+1,nu=[0],k=0} t[0] e",
            "pi{l=1,nu=[0],k=0} t[0] e junk",
            "pi{l=1,nu=[0],k=0}\tt[0] e",
        ] {
            assert!(g.parse_element(bad).is_err(), "{bad}");
        }
        for bad in ["b[-1; r=0; n=1]", "b[2; r=0; n=1]", "b[1; n=1; r=0]", "b[1; r=0; n=1"] {
            assert!(g.parse_root(bad).is_err(), "{bad}");
        }
        let f = FiniteGround::from_label("A2").unwrap();
        assert!(f.parse_element("pi{l=0,nu=[1,0],k=0} t[0,0] e").is_err());
        assert!(f.parse_element("pi{l=0,nu=[2,-1],k=0} t[0,0] s0").is_err());
        assert!(f.parse_element("pi{l=1,nu=[2,-1],k=0} t[0,0] e").is_err());
        let x = f.parse_element("pi{l=0,nu=[2,-1],k=0} t[0,0] s2*s1").unwrap();
        assert_eq!(f.parse_element(&f.format_element(&x)).unwrap(), x);
        assert!(f.parse_root("b[1,1; r=1; n=0]").is_err());
    }
}
