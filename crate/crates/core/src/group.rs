//! Finite groups given by multiplication tables, plus subset bitmasks.

use std::fmt;

use crate::error::{Error, Result};

/// Finite group with labelled elements; `table[a][b]` is the index of `a·b`.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    labels: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

/// Largest group order for which subset bitmasks fit in a `u64`.
pub const MAX_SUPPORTED_ORDER: usize = 63;

impl FiniteGroup {
    /// Validates the table: closure, associativity, identity, inverses.
    pub fn from_table(name: impl Into<String>, labels: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = labels.len();
        let bad = |msg: String| Error::InvalidGroup(msg);
        if n == 0 {
            return Err(bad("a group needs at least one element".into()));
        }
        if n > MAX_SUPPORTED_ORDER {
            return Err(bad(format!("order {n} exceeds the supported maximum {MAX_SUPPORTED_ORDER}")));
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(bad(format!("duplicate element label {l:?}")));
            }
        }
        if table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(bad(format!("table must be {n}x{n}")));
        }
        if table.iter().flatten().any(|&x| x >= n) {
            return Err(bad("table entry out of range".into()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| bad("no identity element".into()))?;
        let mut inverse = Vec::with_capacity(n);
        for a in 0..n {
            let inv = (0..n)
                .find(|&b| table[a][b] == identity && table[b][a] == identity)
                .ok_or_else(|| bad(format!("element {} has no inverse", labels[a])))?;
            inverse.push(inv);
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(bad(format!(
                            "not associative at ({}, {}, {})",
                            labels[a], labels[b], labels[c]
                        )));
                    }
                }
            }
        }
        Ok(FiniteGroup { name: name.into(), labels, table, identity, inverse })
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// Cyclic group of order `n`, elements `e, g, g^2, ...`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1, "cyclic group needs n >= 1");
        let labels = (0..n).map(power_label("g")).collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let name = if n == 1 { "trivial".to_string() } else { format!("cyclic({n})") };
        Self::from_table(name, labels, table).expect("cyclic table is a group")
    }

    /// Dihedral group with `2n` elements `r^a s^b`, indexed `a + n·b`.
    pub fn dihedral(n: usize) -> Self {
        assert!(n >= 1, "dihedral group needs n >= 1");
        let mut labels = Vec::with_capacity(2 * n);
        for b in 0..2 {
            for a in 0..n {
                let r = if a == 0 { String::new() } else { power_label("r")(a) };
                labels.push(match (r.is_empty(), b) {
                    (true, 0) => "e".to_string(),
                    (true, _) => "s".to_string(),
                    (false, 0) => r,
                    (false, _) => format!("{r}s"),
                });
            }
        }
        let idx = |a: usize, b: usize| a % n + n * (b % 2);
        let mut table = vec![vec![0; 2 * n]; 2 * n];
        for x in 0..2 * n {
            let (a, b) = (x % n, x / n);
            for y in 0..2 * n {
                let (c, d) = (y % n, y / n);
                let rot = if b == 0 { a + c } else { a + n - c };
                table[x][y] = idx(rot, b + d);
            }
        }
        Self::from_table(format!("dihedral({n})"), labels, table).expect("dihedral table is a group")
    }

    /// Symmetric group on `n ≤ 4` letters, permutations in lexicographic order of their images.
    pub fn symmetric(n: usize) -> Result<Self> {
        if !(1..=4).contains(&n) {
            return Err(Error::InvalidGroup(format!("symmetric(n) is available for 1 <= n <= 4, got {n}")));
        }
        let mut perms = Vec::new();
        permutations(&mut (0..n).collect(), 0, &mut perms);
        perms.sort();
        let labels = perms.iter().map(|p| cycle_label(p)).collect();
        let index = |p: &Vec<usize>| perms.iter().position(|q| q == p).unwrap();
        let table = perms
            .iter()
            .map(|p| perms.iter().map(|q| index(&(0..n).map(|x| p[q[x]]).collect())).collect())
            .collect();
        Self::from_table(format!("symmetric({n})"), labels, table)
    }

    pub fn klein4() -> Self {
        let labels = ["e", "a", "b", "c"].iter().map(|s| s.to_string()).collect();
        let table = (0..4).map(|x| (0..4).map(|y| x ^ y).collect()).collect();
        Self::from_table("klein4", labels, table).expect("klein table is a group")
    }

    /// Parses a whitespace-separated table: first line labels, then one row per element.
    ///
    /// A row lists the products `a·b` for `b` in label order, optionally
    /// preceded by the label `a` itself.
    pub fn from_table_text(name: impl Into<String>, text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let labels: Vec<String> = lines
            .next()
            .ok_or_else(|| Error::Parse("empty group table".into()))?
            .split_whitespace()
            .map(str::to_string)
            .collect();
        let n = labels.len();
        let lookup = |s: &str| {
            labels.iter().position(|l| l == s).ok_or_else(|| Error::Parse(format!("unknown element {s:?} in table")))
        };
        let mut rows: Vec<Option<Vec<usize>>> = vec![None; n];
        let mut next_row = 0;
        for line in lines {
            let toks: Vec<&str> = line.split_whitespace().collect();
            let (row, entries) = if toks.len() == n + 1 {
                (lookup(toks[0])?, &toks[1..])
            } else if toks.len() == n {
                (next_row, &toks[..])
            } else {
                return Err(Error::Parse(format!("table row {line:?} has {} entries, expected {n}", toks.len())));
            };
            if row >= n || rows[row].is_some() {
                return Err(Error::Parse(format!("row {line:?} is out of place or repeated")));
            }
            rows[row] = Some(entries.iter().map(|s| lookup(s)).collect::<Result<_>>()?);
            next_row = row + 1;
        }
        let table: Vec<Vec<usize>> = rows
            .into_iter()
            .enumerate()
            .map(|(i, r)| r.ok_or_else(|| Error::Parse(format!("missing row for {}", labels[i]))))
            .collect::<Result<_>>()?;
        Self::from_table(name, labels, table)
    }

    /// Built-in group from `name[:param]`: `cyclic:n`, `dihedral:n`, `symmetric:n`, `klein4`, `trivial`.
    pub fn builtin(spec: &str) -> Result<Self> {
        match parse_builtin(spec)? {
            Builtin::Cyclic(n) => Ok(Self::cyclic(n)),
            Builtin::Dihedral(n) => Ok(Self::dihedral(n)),
            Builtin::Symmetric(n) => Self::symmetric(n),
            Builtin::Klein4 => Ok(Self::klein4()),
            Builtin::Trivial => Ok(Self::trivial()),
        }
    }

    /// Order of a built-in group without constructing it.
    pub fn builtin_order(spec: &str) -> Result<usize> {
        Ok(match parse_builtin(spec)? {
            Builtin::Cyclic(n) => n,
            Builtin::Dihedral(n) => n.saturating_mul(2),
            Builtin::Symmetric(n) => (1..=n).fold(1usize, |a, k| a.saturating_mul(k)),
            Builtin::Klein4 => 4,
            Builtin::Trivial => 1,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, g: usize) -> &str {
        &self.labels[g]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    /// Bitmask of the whole group.
    pub fn full_mask(&self) -> u64 {
        (1u64 << self.order()) - 1
    }

    pub fn identity_mask(&self) -> u64 {
        1u64 << self.identity
    }

    /// Left translate `gX`.
    pub fn translate(&self, g: usize, mask: u64) -> u64 {
        let mut out = 0;
        for x in iter_mask(mask) {
            out |= 1u64 << self.mul(g, x);
        }
        out
    }

    /// Subsets in canonical order: by cardinality, then by bitmask value.
    pub fn subsets_where(&self, keep: impl Fn(u64) -> bool) -> Vec<u64> {
        let mut out: Vec<u64> = (0..=self.full_mask()).filter(|&m| keep(m)).collect();
        out.sort_by_key(|&m| (m.count_ones(), m));
        out
    }

    /// Subsets containing the identity.
    pub fn subsets_with_identity(&self) -> Vec<u64> {
        let e = self.identity_mask();
        self.subsets_where(|m| m & e != 0)
    }

    /// Nonempty subsets.
    pub fn nonempty_subsets(&self) -> Vec<u64> {
        self.subsets_where(|m| m != 0)
    }

    /// `{a,b,...}` listing members in element order.
    pub fn subset_label(&self, mask: u64) -> String {
        let names: Vec<&str> = iter_mask(mask).map(|g| self.label(g)).collect();
        format!("{{{}}}", names.join(","))
    }
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.name, self.order())
    }
}

/// Members of a bitmask in increasing index order.
enum Builtin {
    Cyclic(usize),
    Dihedral(usize),
    Symmetric(usize),
    Klein4,
    Trivial,
}

fn parse_builtin(spec: &str) -> Result<Builtin> {
    let (name, param) = match spec.split_once(':') {
        Some((a, b)) => (a.trim(), Some(b.trim())),
        None => (spec.trim(), None),
    };
    let num = |p: Option<&str>| -> Result<usize> {
        let p = p.ok_or_else(|| Error::Parse(format!("group {name:?} needs a parameter, e.g. {name}:3")))?;
        let n: usize = p.parse().map_err(|_| Error::Parse(format!("bad group parameter {p:?}")))?;
        if n == 0 {
            return Err(Error::InvalidGroup(format!("{name} needs a parameter >= 1")));
        }
        Ok(n)
    };
    match name {
        "cyclic" | "Z" => Ok(Builtin::Cyclic(num(param)?)),
        "dihedral" | "D" => Ok(Builtin::Dihedral(num(param)?)),
        "symmetric" | "S" => Ok(Builtin::Symmetric(num(param)?)),
        "klein4" | "klein" => match param {
            None | Some("4") => Ok(Builtin::Klein4),
            Some(p) => Err(Error::Parse(format!("klein4 has order 4, got parameter {p:?}"))),
        },
        "trivial" => match param {
            None | Some("1") => Ok(Builtin::Trivial),
            Some(p) => Err(Error::Parse(format!("trivial has order 1, got parameter {p:?}"))),
        },
        _ => Err(Error::Parse(format!("unknown group {name:?}"))),
    }
}

pub fn iter_mask(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| mask >> i & 1 == 1)
}

/// Rejects groups larger than `limit`.
pub fn check_order(group: &FiniteGroup, limit: usize) -> Result<()> {
    if group.order() > limit {
        return Err(Error::OrderLimit { order: group.order(), limit });
    }
    Ok(())
}

fn power_label(base: &'static str) -> impl Fn(usize) -> String {
    move |i| match i {
        0 => "e".to_string(),
        1 => base.to_string(),
        _ => format!("{base}^{i}"),
    }
}

fn permutations(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == items.len() {
        out.push(items.clone());
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permutations(items, k + 1, out);
        items.swap(k, i);
    }
}

fn cycle_label(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        let mut cyc = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            cyc.push((x + 1).to_string());
            x = p[x];
        }
        out.push('(');
        out.push_str(&cyc.join(""));
        out.push(')');
    }
    if out.is_empty() {
        "e".to_string()
    } else {
        out
    }
}
