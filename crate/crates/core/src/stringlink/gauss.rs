//! String links given by a Gauss diagram: each crossing sits at its own
//! position along the under strand and along the over strand, with no global
//! order required. Longitudes come from iterating the arc meridian relations
//! to their fixed point, which is reached after at most `d + 1` rounds for
//! truncation degree `d`.

use serde::{Deserialize, Serialize};

use super::{check_event, CrossingEvent, EventList, LinkError, StringLinkDiagram};
use crate::magnus::{MagnusSeries, SeriesShape};

pub type GaussCrossing = CrossingEvent;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GaussDiagram {
    num_strands: usize,
    crossings: Vec<CrossingEvent>,
    /// Per strand, crossing ids from bottom to top.
    strands: Vec<Vec<usize>>,
}

impl GaussDiagram {
    pub fn new(num_strands: usize, crossings: Vec<CrossingEvent>, strands: Vec<Vec<usize>>) -> Result<Self, LinkError> {
        if strands.len() != num_strands {
            return Err(LinkError::BadGauss(format!("{} strand orders for {num_strands} strands", strands.len())));
        }
        let mut seen = vec![[false; 2]; crossings.len()];
        for c in &crossings {
            check_event(c, num_strands)?;
        }
        for (s, order) in strands.iter().enumerate() {
            for &id in order {
                let c = crossings.get(id).ok_or_else(|| LinkError::BadGauss(format!("unknown crossing {id}")))?;
                let role = if c.under == s + 1 {
                    0
                } else if c.over == s + 1 {
                    1
                } else {
                    return Err(LinkError::BadGauss(format!("crossing {id} does not involve strand {}", s + 1)));
                };
                if seen[id][role] {
                    return Err(LinkError::BadGauss(format!("crossing {id} listed twice on strand {}", s + 1)));
                }
                seen[id][role] = true;
            }
        }
        if let Some(id) = seen.iter().position(|r| !r[0] || !r[1]) {
            return Err(LinkError::BadGauss(format!("crossing {id} missing from a strand")));
        }
        Ok(GaussDiagram { num_strands, crossings, strands })
    }

    /// The diagram whose strand orders are the event order.
    pub fn from_events(l: &EventList) -> Self {
        let mut strands = vec![Vec::new(); l.num_strands];
        for (id, e) in l.events().iter().enumerate() {
            strands[e.under - 1].push(id);
            strands[e.over - 1].push(id);
        }
        GaussDiagram { num_strands: l.num_strands, crossings: l.events().to_vec(), strands }
    }

    pub fn crossing_list(&self) -> &[CrossingEvent] {
        &self.crossings
    }

    pub fn strand_order(&self, s: usize) -> &[usize] {
        &self.strands[s - 1]
    }

    /// Moves the first `r` crossings of strand `s` to its top end, which
    /// cuts the closed component at a different point.
    pub fn rotate_strand(&self, s: usize, r: usize) -> Result<Self, LinkError> {
        if s == 0 || s > self.num_strands {
            return Err(LinkError::StrandOutOfRange { strand: s, num_strands: self.num_strands });
        }
        let mut out = self.clone();
        let order = &mut out.strands[s - 1];
        if !order.is_empty() {
            let r = r % order.len();
            order.rotate_left(r);
        }
        Ok(out)
    }

    /// A global event order compatible with every strand order, if one
    /// exists (smallest available crossing id first).
    pub fn to_events(&self) -> Option<EventList> {
        let n = self.crossings.len();
        let mut indegree = vec![0usize; n];
        let mut next: Vec<Vec<usize>> = vec![Vec::new(); n];
        for order in &self.strands {
            for w in order.windows(2) {
                next[w[0]].push(w[1]);
                indegree[w[1]] += 1;
            }
        }
        let mut ready: std::collections::BTreeSet<usize> = (0..n).filter(|&i| indegree[i] == 0).collect();
        let mut events = Vec::with_capacity(n);
        while let Some(id) = ready.pop_first() {
            events.push(self.crossings[id]);
            for &t in &next[id] {
                indegree[t] -= 1;
                if indegree[t] == 0 {
                    ready.insert(t);
                }
            }
        }
        (events.len() == n).then_some(EventList { num_strands: self.num_strands, events })
    }
}

impl StringLinkDiagram for GaussDiagram {
    fn num_strands(&self) -> usize {
        self.num_strands
    }

    fn longitudes(&self, d: usize, squarefree: bool) -> Result<Vec<MagnusSeries>, LinkError> {
        let k = self.num_strands;
        let shape = SeriesShape::new(k, d, squarefree);
        // Arc of the over strand at each crossing, and under crossings per strand.
        let mut over_arc = vec![0usize; self.crossings.len()];
        let mut unders: Vec<Vec<usize>> = vec![Vec::new(); k];
        for (s, order) in self.strands.iter().enumerate() {
            let mut arc = 0;
            for &id in order {
                if self.crossings[id].under == s + 1 {
                    unders[s].push(id);
                    arc += 1;
                } else {
                    over_arc[id] = arc;
                }
            }
        }
        let base: Vec<(MagnusSeries, MagnusSeries)> = (1..=k)
            .map(|s| Ok((MagnusSeries::generator(shape, s, false)?, MagnusSeries::generator(shape, s, true)?)))
            .collect::<Result<_, LinkError>>()?;
        let mut arcs: Vec<Vec<(MagnusSeries, MagnusSeries)>> = (0..k).map(|s| vec![base[s].clone(); unders[s].len() + 1]).collect();
        let factor = |arcs: &Vec<Vec<(MagnusSeries, MagnusSeries)>>, id: usize| {
            let c = &self.crossings[id];
            let (m, mi) = &arcs[c.over - 1][over_arc[id]];
            if c.sign.is_minus() {
                (mi.clone(), m.clone())
            } else {
                (m.clone(), mi.clone())
            }
        };
        let mut settled = false;
        for _ in 0..d + 3 {
            let mut next = Vec::with_capacity(k);
            for s in 0..k {
                let mut strand = Vec::with_capacity(unders[s].len() + 1);
                strand.push(base[s].clone());
                for &id in &unders[s] {
                    let (x, xi) = factor(&arcs, id);
                    let (m, mi) = strand.last().expect("starts with the base arc");
                    strand.push((x.mul_same(m).mul_same(&xi), x.mul_same(mi).mul_same(&xi)));
                }
                next.push(strand);
            }
            let stable = next == arcs;
            arcs = next;
            if stable {
                settled = true;
                break;
            }
        }
        if !settled {
            return Err(LinkError::NoFixedPoint);
        }
        (0..k)
            .map(|s| {
                let mut lon = MagnusSeries::one(shape)?;
                for &id in &unders[s] {
                    lon = lon.mul_same(&factor(&arcs, id).0);
                }
                Ok(lon)
            })
            .collect()
    }

    fn restrict(&self, strands: &[usize]) -> Self {
        let label = |s: usize| strands.iter().position(|&t| t == s).map(|p| p + 1);
        let mut new_id = vec![None; self.crossings.len()];
        let mut crossings = Vec::new();
        for (id, c) in self.crossings.iter().enumerate() {
            if let (Some(u), Some(o)) = (label(c.under), label(c.over)) {
                new_id[id] = Some(crossings.len());
                crossings.push(CrossingEvent::new(u, o, c.sign));
            }
        }
        let orders = strands
            .iter()
            .map(|&s| self.strands[s - 1].iter().filter_map(|&id| new_id[id]).collect())
            .collect();
        GaussDiagram { num_strands: strands.len(), crossings, strands: orders }
    }

    fn crossings(&self) -> Vec<CrossingEvent> {
        self.crossings.clone()
    }
}
