use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::error::{Error, Result};

/// A finite group given by its multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
    labels: Vec<String>,
}

impl FiniteGroup {
    /// Verifies closure, associativity, identity and inverses.
    pub fn from_table(table: Vec<Vec<usize>>, labels: Vec<String>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        if labels.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|&v| v >= n)) {
            return Err(Error::InvalidGroup("table must be square with entries in range".into()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        let mut inverse = Vec::with_capacity(n);
        for x in 0..n {
            let inv = (0..n)
                .find(|&y| table[x][y] == identity && table[y][x] == identity)
                .ok_or_else(|| Error::InvalidGroup(format!("element {} has no inverse", labels[x])))?;
            inverse.push(inv);
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidGroup(format!(
                            "not associative at ({}, {}, {})",
                            labels[a], labels[b], labels[c]
                        )));
                    }
                }
            }
        }
        let distinct: BTreeSet<&String> = labels.iter().collect();
        if distinct.len() != n {
            return Err(Error::InvalidGroup("duplicate element labels".into()));
        }
        Ok(Self {
            table,
            identity,
            inverse,
            labels,
        })
    }

    /// ℤ_n with labels `0..n`.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGroup("cyclic group needs n >= 1".into()));
        }
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::from_table(table, (0..n).map(|a| a.to_string()).collect())
    }

    /// S_n on `{0..n}` in lexicographic one-line order, `(pq)(i) = p(q(i))`.
    /// Labels are the one-line images, e.g. `102` for the swap of 0 and 1.
    pub fn symmetric(n: usize) -> Result<Self> {
        if n == 0 || n > 6 {
            return Err(Error::InvalidGroup("symmetric group supported for 1 <= n <= 6".into()));
        }
        let mut perms: Vec<Vec<usize>> = Vec::new();
        let mut p: Vec<usize> = (0..n).collect();
        loop {
            perms.push(p.clone());
            if !next_permutation(&mut p) {
                break;
            }
        }
        let index: HashMap<Vec<usize>, usize> = perms.iter().cloned().enumerate().map(|(i, q)| (q, i)).collect();
        let table = perms
            .iter()
            .map(|p| {
                perms
                    .iter()
                    .map(|q| index[&q.iter().map(|&i| p[i]).collect::<Vec<_>>()])
                    .collect()
            })
            .collect();
        let labels = perms
            .iter()
            .map(|p| p.iter().map(|d| d.to_string()).collect::<String>())
            .collect();
        Self::from_table(table, labels)
    }

    /// Direct product; element `(a, b)` has index `a·|H| + b` and label `a:b`.
    pub fn product(g: &Self, h: &Self) -> Result<Self> {
        let (n, m) = (g.order(), h.order());
        let table = (0..n * m)
            .map(|x| {
                (0..n * m)
                    .map(|y| g.mul(x / m, y / m) * m + h.mul(x % m, y % m))
                    .collect()
            })
            .collect();
        let labels = (0..n * m)
            .map(|x| format!("{}:{}", g.labels[x / m], h.labels[x % m]))
            .collect();
        Self::from_table(table, labels)
    }

    /// `cyclic:n`, `sym:n` or `product:F1,F2,...` with cyclic/sym factors.
    pub fn from_spec(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        if let Some(rest) = spec.strip_prefix("product:") {
            let mut factors = rest.split(',').map(Self::from_spec);
            let first = factors
                .next()
                .ok_or_else(|| Error::InvalidGroup("empty product".into()))??;
            return factors.try_fold(first, |acc, f| Self::product(&acc, &f?));
        }
        let (kind, arg) = spec
            .split_once(':')
            .ok_or_else(|| Error::InvalidGroup(format!("unknown group spec '{spec}'")))?;
        let n: usize = arg
            .trim()
            .parse()
            .map_err(|_| Error::InvalidGroup(format!("bad size in '{spec}'")))?;
        match kind {
            "cyclic" => Self::cyclic(n),
            "sym" => Self::symmetric(n),
            _ => Err(Error::InvalidGroup(format!("unknown group spec '{spec}'"))),
        }
    }

    /// CSV multiplication table. The first row is a corner cell followed by
    /// the element labels; each later row starts with a label followed by the
    /// products with the header elements.
    pub fn from_csv(text: &str) -> Result<Self> {
        let rows: Vec<(usize, Vec<String>)> = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty())
            .map(|(i, l)| (i + 1, l.split(',').map(|c| c.trim().to_string()).collect()))
            .collect();
        let (_, header) = rows.first().ok_or_else(|| Error::Parse {
            line: None,
            message: "empty table file".into(),
        })?;
        let labels: Vec<String> = header[1..].to_vec();
        let index: HashMap<&str, usize> = labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        let n = labels.len();
        if rows.len() != n + 1 {
            return Err(Error::Parse {
                line: None,
                message: format!("expected {n} table rows, found {}", rows.len() - 1),
            });
        }
        let mut table = vec![Vec::new(); n];
        let mut seen = vec![false; n];
        for (line, row) in &rows[1..] {
            let err = |message: String| Error::Parse {
                line: Some(*line),
                message,
            };
            if row.len() != n + 1 {
                return Err(err(format!("expected {} cells", n + 1)));
            }
            let r = *index
                .get(row[0].as_str())
                .ok_or_else(|| err(format!("unknown element '{}'", row[0])))?;
            if seen[r] {
                return Err(err(format!("row for '{}' repeated", row[0])));
            }
            seen[r] = true;
            table[r] = row[1..]
                .iter()
                .map(|c| index.get(c.as_str()).copied().ok_or_else(|| err(format!("unknown element '{c}'"))))
                .collect::<Result<_>>()?;
        }
        Self::from_table(table, labels)
    }

    pub fn order(&self) -> usize {
        self.table.len()
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

    /// `b⁻¹ a b`.
    pub fn conjugate(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(b), a), b)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn element(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// The subgroup generated by `gens`, as a sorted list.
    pub fn generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        let mut queue = VecDeque::from([self.identity]);
        seen[self.identity] = true;
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..self.order()).filter(|&x| seen[x]).collect()
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("successor exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// A subset `C ⊆ G∖{e}` with its derived properties.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratingSet {
    elements: Vec<usize>,
    pub closed_under_inverse: bool,
    /// `b⁻¹ a b ∈ C` for all `a, b ∈ C`.
    pub ad_stable: bool,
    pub generates: bool,
}

impl GeneratingSet {
    pub fn new(group: &FiniteGroup, elements: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut els: Vec<usize> = elements.into_iter().collect();
        els.sort_unstable();
        if els.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidGenerators("repeated element".into()));
        }
        if let Some(&a) = els.iter().find(|&&a| a >= group.order()) {
            return Err(Error::InvalidGenerators(format!("element index {a} out of range")));
        }
        if els.contains(&group.identity()) {
            return Err(Error::InvalidGenerators("the identity cannot be a generator".into()));
        }
        let set: BTreeSet<usize> = els.iter().copied().collect();
        let closed_under_inverse = els.iter().all(|&a| set.contains(&group.inv(a)));
        let ad_stable = els
            .iter()
            .all(|&a| els.iter().all(|&b| set.contains(&group.conjugate(a, b))));
        let generates = group.generated(&els).len() == group.order();
        Ok(Self {
            elements: els,
            closed_under_inverse,
            ad_stable,
            generates,
        })
    }

    /// Looks generators up by label.
    pub fn from_labels<S: AsRef<str>>(group: &FiniteGroup, labels: &[S]) -> Result<Self> {
        let els = labels
            .iter()
            .map(|l| {
                group
                    .element(l.as_ref().trim())
                    .ok_or_else(|| Error::InvalidGenerators(format!("unknown element '{}'", l.as_ref())))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(group, els)
    }

    /// Sorted element indices.
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn position(&self, a: usize) -> Option<usize> {
        self.elements.binary_search(&a).ok()
    }
}
