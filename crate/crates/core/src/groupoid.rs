//! Finite groupoids and their connected components.

use std::collections::HashMap;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub label: String,
    pub source: usize,
    pub target: usize,
}

/// Finite groupoid. The product `a·b` is defined iff `source(a) == target(b)`,
/// i.e. `a` is applied after `b`.
#[derive(Clone, Debug)]
pub struct Groupoid {
    objects: Vec<String>,
    arrows: Vec<Arrow>,
    compose: HashMap<(usize, usize), usize>,
    identities: Vec<usize>,
    inverse: Vec<usize>,
}

/// One connected component: its objects, the size of the matching matrix
/// block and the order of the isotropy group at any object.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Component {
    pub objects: Vec<String>,
    pub matrix_size: usize,
    pub isotropy_order: usize,
}

impl Component {
    /// Dimension of the component's block `M_n(k G_x)`.
    pub fn dim(&self) -> usize {
        self.matrix_size * self.matrix_size * self.isotropy_order
    }
}

impl Groupoid {
    /// Builds and validates a groupoid from arrows and a composition rule.
    ///
    /// `compose(a, b)` is consulted only for composable pairs and must
    /// return the arrow `a·b`.
    pub fn new(objects: Vec<String>, arrows: Vec<Arrow>, compose: impl Fn(usize, usize) -> Option<usize>) -> Result<Self> {
        let bad = |m: String| Error::rejected("groupoid", m);
        for a in &arrows {
            if a.source >= objects.len() || a.target >= objects.len() {
                return Err(bad(format!("arrow {} has an endpoint out of range", a.label)));
            }
        }
        let mut table = HashMap::new();
        let mut by_source: Vec<Vec<usize>> = vec![Vec::new(); objects.len()];
        let mut by_target: Vec<Vec<usize>> = vec![Vec::new(); objects.len()];
        for (i, a) in arrows.iter().enumerate() {
            by_source[a.source].push(i);
            by_target[a.target].push(i);
        }
        for (b, arr_b) in arrows.iter().enumerate() {
            for &a in &by_source[arr_b.target] {
                let c = compose(a, b).ok_or_else(|| bad(format!("{} · {} undefined", arrows[a].label, arr_b.label)))?;
                if arrows[c].source != arr_b.source || arrows[c].target != arrows[a].target {
                    return Err(bad(format!("{} · {} has wrong endpoints", arrows[a].label, arr_b.label)));
                }
                table.insert((a, b), c);
            }
        }
        let mut identities = Vec::with_capacity(objects.len());
        for x in 0..objects.len() {
            let id = by_source[x]
                .iter()
                .copied()
                .find(|&i| {
                    arrows[i].target == x
                        && by_source[x].iter().all(|&b| table[&(b, i)] == b)
                        && by_target[x].iter().all(|&a| table[&(i, a)] == a)
                })
                .ok_or_else(|| bad(format!("object {} has no identity arrow", objects[x])))?;
            identities.push(id);
        }
        let mut inverse = Vec::with_capacity(arrows.len());
        for (a, arr) in arrows.iter().enumerate() {
            let inv = by_source[arr.target]
                .iter()
                .copied()
                .find(|&b| table[&(b, a)] == identities[arr.source] && table[&(a, b)] == identities[arr.target])
                .ok_or_else(|| bad(format!("arrow {} is not invertible", arr.label)))?;
            inverse.push(inv);
        }
        for (&(a, b), &ab) in &table {
            for &c in &by_target[arrows[b].source] {
                let bc = table[&(b, c)];
                if table[&(ab, c)] != table[&(a, bc)] {
                    return Err(bad(format!(
                        "composition not associative at ({}, {}, {})",
                        arrows[a].label, arrows[b].label, arrows[c].label
                    )));
                }
            }
        }
        Ok(Groupoid { objects, arrows, compose: table, identities, inverse })
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    /// `a·b` when defined.
    pub fn compose(&self, a: usize, b: usize) -> Option<usize> {
        self.compose.get(&(a, b)).copied()
    }

    pub fn identity(&self, object: usize) -> usize {
        self.identities[object]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn components(&self) -> Vec<Component> {
        let n = self.objects.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let nx = p[y];
                p[y] = r;
                y = nx;
            }
            r
        }
        for a in &self.arrows {
            let (x, y) = (find(&mut parent, a.source), find(&mut parent, a.target));
            if x != y {
                parent[x.max(y)] = x.min(y);
            }
        }
        let mut groups: Vec<(usize, Vec<usize>)> = Vec::new();
        for x in 0..n {
            let r = find(&mut parent, x);
            match groups.iter_mut().find(|(root, _)| *root == r) {
                Some((_, v)) => v.push(x),
                None => groups.push((r, vec![x])),
            }
        }
        groups
            .into_iter()
            .map(|(_, objs)| {
                let x0 = objs[0];
                let isotropy_order = self.arrows.iter().filter(|a| a.source == x0 && a.target == x0).count();
                Component {
                    matrix_size: objs.len(),
                    isotropy_order,
                    objects: objs.into_iter().map(|x| self.objects[x].clone()).collect(),
                }
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The pair groupoid on two objects: one arrow between any ordered pair.
    fn pair_groupoid() -> Groupoid {
        let objects = vec!["x".to_string(), "y".to_string()];
        let mut arrows = Vec::new();
        for s in 0..2 {
            for t in 0..2 {
                arrows.push(Arrow { label: format!("{t}<-{s}"), source: s, target: t });
            }
        }
        let arrows2 = arrows.clone();
        Groupoid::new(objects, arrows, move |a, b| {
            let (s, t) = (arrows2[b].source, arrows2[a].target);
            Some(s * 2 + t)
        })
        .unwrap()
    }

    #[test]
    fn pair_groupoid_is_one_component() {
        let g = pair_groupoid();
        let c = g.components();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].matrix_size, 2);
        assert_eq!(c[0].isotropy_order, 1);
        assert_eq!(c[0].dim(), 4);
    }

    #[test]
    fn single_object_trivial_group() {
        let g = Groupoid::new(vec!["*".into()], vec![Arrow { label: "id".into(), source: 0, target: 0 }], |_, _| Some(0))
            .unwrap();
        assert_eq!(g.components(), vec![Component { objects: vec!["*".into()], matrix_size: 1, isotropy_order: 1 }]);
    }
}
