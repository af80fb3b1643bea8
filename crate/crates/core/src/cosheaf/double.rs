use crate::algebra::{DoubleComplex, IntMatrix};
use crate::relational::ComplexRelation;
use crate::simplicial::{SimplexId, SimplicialComplex};
use std::collections::{BTreeMap, HashMap};

type Cells = BTreeMap<(i64, i64), Vec<String>>;
type Maps = BTreeMap<(i64, i64), IntMatrix>;

fn sign(p: i64) -> i64 {
    if p.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Double complex of a complex relation: cell `(p, q)` is spanned by related pairs `σ×τ`
/// with `dim σ = p`, `dim τ = q`. The horizontal map is the boundary of the first factor and
/// the vertical map is `(-1)^p` times the boundary of the second, so the two anticommute and
/// the total complex is the cellular chain complex of the relational product.
///
/// With `augmented`, column `-1` holds the simplices of the second complex and row `-1` those
/// of the first. The twist extends to `p = -1`, so the vertical map there is minus the
/// boundary of the second complex. There is no `(-1, -1)` cell. The total degree `n` of this
/// window carries the chains of degree `n + 1` of the relational join.
pub fn relational_double_complex(cr: &ComplexRelation, augmented: bool) -> DoubleComplex {
    let k = cr.source();
    let m = cr.target();
    let mut cells: Cells = BTreeMap::new();
    let mut pos: HashMap<(SimplexId, SimplexId), usize> = HashMap::new();
    for &(s, t) in cr.pairs() {
        let entry = cells.entry((s.dim as i64, t.dim as i64)).or_default();
        pos.insert((s, t), entry.len());
        entry.push(format!("{}x{}", k.name(s), m.name(t)));
    }
    let mut columns: BTreeMap<(i64, i64), Vec<Vec<(usize, i64)>>> = BTreeMap::new();
    let mut rows: BTreeMap<(i64, i64), Vec<Vec<(usize, i64)>>> = BTreeMap::new();
    for &(s, t) in cr.pairs() {
        let (p, q) = (s.dim as i64, t.dim as i64);
        let h: Vec<(usize, i64)> = k.boundary_faces(s).into_iter().map(|(f, e)| (pos[&(f, t)], e)).collect();
        let v: Vec<(usize, i64)> =
            m.boundary_faces(t).into_iter().map(|(f, e)| (pos[&(s, f)], sign(p) * e)).collect();
        columns.entry((p, q)).or_default().push(h);
        rows.entry((p, q)).or_default().push(v);
    }

    if augmented {
        // bottom row: σ×w ↦ (-1)^p σ; left column: v×τ ↦ τ
        for &(s, t) in cr.pairs() {
            let (p, q) = (s.dim as i64, t.dim as i64);
            if q == 0 {
                let col = &mut rows.get_mut(&(p, q)).unwrap()[pos[&(s, t)]];
                col.push((s.index, sign(p)));
            }
            if p == 0 {
                let col = &mut columns.get_mut(&(p, q)).unwrap()[pos[&(s, t)]];
                col.push((t.index, 1));
            }
        }
        augment(k, &mut cells, &mut columns, |d| (d, -1), 1);
        augment(m, &mut cells, &mut rows, |d| (-1, d), -1);
    }

    let finish = |maps: BTreeMap<(i64, i64), Vec<Vec<(usize, i64)>>>, step: (i64, i64)| -> Maps {
        maps.into_iter()
            .map(|((p, q), cols)| {
                let n = cells.get(&(p - step.0, q - step.1)).map_or(0, |c| c.len());
                ((p, q), IntMatrix::from_small_columns(n, cols))
            })
            .collect()
    };
    let horizontal = finish(columns, (1, 0));
    let vertical = finish(rows, (0, 1));
    DoubleComplex::new(cells, horizontal, vertical).expect("relational double complex is well formed")
}

/// Adds a boundary row or column holding the chains of one factor, with its boundary scaled by
/// `scale` (`1` for the first complex along row `-1`, `-1` for the second along column `-1`).
fn augment(
    k: &SimplicialComplex,
    cells: &mut Cells,
    maps: &mut BTreeMap<(i64, i64), Vec<Vec<(usize, i64)>>>,
    at: impl Fn(i64) -> (i64, i64),
    scale: i64,
) {
    for d in 0..k.counts().len() {
        let ids: Vec<SimplexId> = (0..k.count(d)).map(|i| SimplexId { dim: d, index: i }).collect();
        cells.insert(at(d as i64), ids.iter().map(|&s| k.name(s)).collect());
        let cols = ids
            .iter()
            .map(|&s| k.boundary_faces(s).into_iter().map(|(f, e)| (f.index, scale * e)).collect())
            .collect();
        maps.insert(at(d as i64), cols);
    }
}

