//! Todd–Coxeter coset enumeration over the trivial subgroup, following the
//! HLT strategy with coincidence handling. On success the live cosets are the
//! group elements and the scanned table is its regular representation.

use crate::covers::presentation::Presentation;
use crate::error::Error;

/// Column layout: generator g acts by column 2g, its inverse by 2g + 1.
fn col(gen: usize, exp: i8) -> usize {
    if exp >= 0 {
        2 * gen
    } else {
        2 * gen + 1
    }
}

struct Table {
    slots: Vec<Vec<Option<usize>>>,
    repr: Vec<usize>,
    dead: std::collections::VecDeque<usize>,
    ncols: usize,
}

impl Table {
    fn new(ncols: usize) -> Self {
        Table { slots: vec![vec![None; ncols]], repr: vec![0], dead: Default::default(), ncols }
    }

    fn rep(&mut self, mut c: usize) -> usize {
        while self.repr[c] != c {
            self.repr[c] = self.repr[self.repr[c]];
            c = self.repr[c];
        }
        c
    }

    fn define(&mut self, from: usize, column: usize) -> usize {
        let fresh = self.slots.len();
        self.slots.push(vec![None; self.ncols]);
        self.repr.push(fresh);
        self.set(from, column, fresh);
        fresh
    }

    fn set(&mut self, a: usize, column: usize, b: usize) {
        self.slots[a][column] = Some(b);
        self.slots[b][column ^ 1] = Some(a);
    }

    fn merge(&mut self, a: usize, b: usize) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (keep, kill) = if a < b { (a, b) } else { (b, a) };
        self.repr[kill] = keep;
        self.dead.push_back(kill);
    }

    fn process_coincidences(&mut self) {
        while let Some(kill) = self.dead.pop_front() {
            for column in 0..self.ncols {
                let Some(target) = self.slots[kill][column] else { continue };
                self.slots[kill][column] = None;
                let target = self.rep(target);
                let keep = self.rep(kill);
                // Transfer the edge kill --column--> target onto keep.
                match self.slots[keep][column] {
                    None => self.set(keep, column, target),
                    Some(existing) => {
                        let existing = self.rep(existing);
                        if existing != target {
                            self.merge(existing, target);
                        }
                    }
                }
                // Mirror slot on the target side.
                let back = column ^ 1;
                match self.slots[target][back] {
                    None => self.slots[target][back] = Some(keep),
                    Some(existing) => {
                        let existing = self.rep(existing);
                        if existing != keep {
                            self.merge(existing, keep);
                        }
                    }
                }
            }
        }
    }
}

/// The multiplication table of a finite group, elements `0..order` with
/// identity 0.
#[derive(Clone, Debug)]
pub struct MulTable {
    pub order: usize,
    pub mul: Vec<Vec<usize>>,
    pub inv: Vec<usize>,
    /// Element represented by each presentation generator.
    pub gen_elt: Vec<usize>,
}

impl MulTable {
    pub fn identity(&self) -> usize {
        0
    }

    pub fn product(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn trivial() -> MulTable {
        MulTable { order: 1, mul: vec![vec![0]], inv: vec![0], gen_elt: Vec::new() }
    }
}

/// Enumerate cosets of the trivial subgroup. `bound` caps the total number of
/// cosets ever defined; exceeding it reports a possibly-infinite group.
pub fn coset_enumeration(p: &Presentation, bound: usize) -> Result<MulTable, Error> {
    let ngen = p.generators.len();
    if ngen == 0 {
        return Ok(MulTable::trivial());
    }
    let ncols = 2 * ngen;
    let mut table = Table::new(ncols);
    // Single forward pass: newly defined cosets are appended and visited in
    // turn; dead cosets are skipped.
    let mut c = 0usize;
    while c < table.slots.len() {
        if table.rep(c) == c {
            for rel in &p.relators {
                if table.rep(c) != c {
                    break;
                }
                scan_word(&mut table, c, rel, bound)?;
                table.process_coincidences();
            }
        }
        if table.rep(c) == c {
            for column in 0..ncols {
                if table.slots[c][column].is_none() {
                    if table.slots.len() >= bound {
                        return Err(Error::Exceeded { bound });
                    }
                    table.define(c, column);
                }
            }
        }
        c += 1;
        if table.slots.len() > bound {
            return Err(Error::Exceeded { bound });
        }
    }
    // Compact live cosets, renumber canonically by discovery order.
    let mut index = std::collections::HashMap::new();
    let mut live = Vec::new();
    for c in 0..table.slots.len() {
        if table.rep(c) == c {
            index.insert(c, live.len());
            live.push(c);
        }
    }
    let order = live.len();
    // Action of each column on live cosets.
    let act = |table: &mut Table, c: usize, column: usize| -> usize {
        let t = table.slots[c][column].expect("complete table");
        table.rep(t)
    };
    // Word reaching each coset from 0 (BFS over generator actions).
    let mut word: Vec<Option<Vec<usize>>> = vec![None; order];
    word[index[&table.rep(0)]] = Some(Vec::new());
    let mut queue = std::collections::VecDeque::from([table.rep(0)]);
    while let Some(c) = queue.pop_front() {
        for column in 0..ncols {
            let t = act(&mut table, c, column);
            if word[index[&t]].is_none() {
                let mut w = word[index[&c]].clone().expect("visited");
                w.push(column);
                word[index[&t]] = Some(w);
                queue.push_back(t);
            }
        }
    }
    let mut mul = vec![vec![0usize; order]; order];
    for a in 0..order {
        for b in 0..order {
            let mut c = live[a];
            for &column in word[b].as_ref().expect("connected") {
                c = act(&mut table, c, column);
            }
            mul[a][b] = index[&table.rep(c)];
        }
    }
    let mut inv = vec![0usize; order];
    for a in 0..order {
        inv[a] = (0..order).find(|&b| mul[a][b] == 0).expect("group");
    }
    let gen_elt = (0..ngen)
        .map(|g| {
            let t = act(&mut table, live[0], col(g, 1));
            index[&t]
        })
        .collect();
    Ok(MulTable { order, mul, inv, gen_elt })
}

fn scan_word(table: &mut Table, c: usize, rel: &[(usize, i8)], bound: usize) -> Result<(), Error> {
    // Scan forward, defining as needed (HLT).
    let mut cur = c;
    for (pos, &(g, e)) in rel.iter().enumerate() {
        let column = col(g, e);
        let next = match table.slots[cur][column] {
            Some(t) => table.rep(t),
            None => {
                if pos + 1 == rel.len() {
                    // Closing step: deduce cur · g = c instead of defining.
                    match table.slots[c][column ^ 1] {
                        Some(back) => {
                            let back = table.rep(back);
                            table.merge(cur, back);
                        }
                        None => table.set(cur, column, c),
                    }
                    return Ok(());
                }
                if table.slots.len() >= bound {
                    return Err(Error::Exceeded { bound });
                }
                table.define(cur, column)
            }
        };
        cur = next;
    }
    table.merge(cur, c);
    Ok(())
}
