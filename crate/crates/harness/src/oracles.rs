//! Reference computations written independently of the library code paths
//! they are compared against.

use std::collections::VecDeque;

use diagram_core::annular::APoint;
use diagram_core::auxmonoids::A21;
use diagram_core::cobordisms::Cobordism;
use diagram_core::partitions::{Partition, Side, Vertex};

/// One connected piece of the gluing graph whose nodes are the blocks of both
/// factors and whose edges are the middle vertices.
struct Piece {
    left: Vec<usize>,
    right: Vec<usize>,
    edges: usize,
}

fn pieces(alpha: &Partition, beta: &Partition) -> (Vec<Piece>, Vec<usize>, Vec<usize>) {
    let (na, nb) = (alpha.num_blocks(), beta.num_blocks());
    // node ids: α-blocks 0..na, β-blocks na..na+nb
    let mut adj = vec![Vec::new(); na + nb];
    for j in 1..=alpha.n() {
        let a = alpha.block_of(Vertex::output(j));
        let b = na + beta.block_of(Vertex::input(j));
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut piece_of = vec![usize::MAX; na + nb];
    let mut out = Vec::new();
    for start in 0..na + nb {
        if piece_of[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut piece = Piece { left: Vec::new(), right: Vec::new(), edges: 0 };
        let mut queue = VecDeque::from([start]);
        piece_of[start] = id;
        while let Some(x) = queue.pop_front() {
            if x < na {
                piece.left.push(x);
            } else {
                piece.right.push(x - na);
            }
            piece.edges += adj[x].len();
            for &y in &adj[x] {
                if piece_of[y] == usize::MAX {
                    piece_of[y] = id;
                    queue.push_back(y);
                }
            }
        }
        piece.edges /= 2;
        out.push(piece);
    }
    let a_piece = piece_of[..na].to_vec();
    let b_piece = piece_of[na..].to_vec();
    (out, a_piece, b_piece)
}

/// Product partition and dead-piece count by breadth-first search.
pub fn compose_partition(alpha: &Partition, beta: &Partition) -> (Partition, usize) {
    let (ps, a_piece, b_piece) = pieces(alpha, beta);
    let mut labels = Vec::new();
    for i in 1..=alpha.m() {
        labels.push(a_piece[alpha.block_of(Vertex::input(i))]);
    }
    for i in 1..=beta.n() {
        labels.push(b_piece[beta.block_of(Vertex::output(i))]);
    }
    let live: std::collections::BTreeSet<usize> = labels.iter().copied().collect();
    let dead = (0..ps.len()).filter(|p| !live.contains(p)).count();
    (Partition::from_labels(alpha.m(), beta.n(), &labels), dead)
}

/// Cobordism product: each piece has genus equal to the sum of its labels
/// plus the first Betti number `edges − nodes + 1` of the piece.
pub fn compose_cobordism(x: &Cobordism, y: &Cobordism) -> Cobordism {
    let (alpha, beta) = (x.base(), y.base());
    let (ps, a_piece, b_piece) = pieces(alpha, beta);
    let genus_of = |p: &Piece| {
        p.left.iter().map(|&b| x.genus()[b]).sum::<i64>()
            + p.right.iter().map(|&b| y.genus()[b]).sum::<i64>()
            + p.edges as i64
            - (p.left.len() + p.right.len()) as i64
            + 1
    };
    let (product, _) = compose_partition(alpha, beta);
    let mut genus = vec![0; product.num_blocks()];
    let mut live = vec![false; ps.len()];
    for b in 0..product.num_blocks() {
        let v = product.least_vertex(b);
        let p = match v.side {
            Side::In => a_piece[alpha.block_of(v)],
            Side::Out => b_piece[beta.block_of(v)],
        };
        live[p] = true;
        genus[b] = genus_of(&ps[p]);
    }
    let mut closed = x.closed().add(y.closed());
    for (p, piece) in ps.iter().enumerate() {
        if !live[p] {
            closed.add_at(genus_of(piece), 1);
        }
    }
    Cobordism::new(product, genus, closed, x.is_regular()).expect("oracle labels valid")
}

/// Position of a point on the boundary circle of the strip `ℝ × [0, 1]`:
/// incoming points left to right on the top line, then outgoing points right
/// to left on the bottom line.
fn boundary_position(m: usize, n: usize, p: APoint) -> (u8, i64) {
    match p.side {
        Side::In => (1, p.offset * m as i64 + p.index as i64),
        Side::Out => (0, -(p.offset * n as i64 + p.index as i64)),
    }
}

/// Brute-force non-crossing test for the shift-invariant matching given by
/// the partners of the offset-0 points (`In1 … Inm Out1 … Outn`):
/// materialises every string with an endpoint in periods `[-span, span]` and
/// compares all pairs.
pub fn is_noncrossing(m: usize, n: usize, partners: &[APoint], span: i64) -> bool {
    let partner_of = |p: APoint| {
        let pos = if p.side == Side::In { p.index - 1 } else { m + p.index - 1 };
        partners[pos].shifted(p.offset)
    };
    let mut chords = Vec::new();
    for t in -span..=span {
        for k in 1..=m {
            let p = APoint::input(t, k);
            chords.push((p, partner_of(p)));
        }
        for k in 1..=n {
            let p = APoint::output(t, k);
            chords.push((p, partner_of(p)));
        }
    }
    let pos = |p| boundary_position(m, n, p);
    for (i, &(a, b)) in chords.iter().enumerate() {
        let (lo, hi) = if pos(a) < pos(b) { (pos(a), pos(b)) } else { (pos(b), pos(a)) };
        for &(c, e) in &chords[i + 1..] {
            if (c == b && e == a) || (c == a && e == b) {
                continue;
            }
            let inside = |q| lo < pos(q) && pos(q) < hi;
            if inside(c) != inside(e) {
                return false;
            }
        }
    }
    true
}

/// `A₂¹` as `2×2` matrix units multiplied through the sandwich matrix
/// `P = [[1, 1], [1, 0]]`: `(i, j)(k, l) = P[j][k] · (i, l)`.
pub fn a21_product(x: A21, y: A21) -> A21 {
    type M = [[i64; 2]; 2];
    fn unit(i: u8, j: u8) -> M {
        let mut m = [[0; 2]; 2];
        m[i as usize][j as usize] = 1;
        m
    }
    fn mul(a: &M, b: &M) -> M {
        let mut c = [[0; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                c[i][j] = (0..2).map(|k| a[i][k] * b[k][j]).sum();
            }
        }
        c
    }
    let p = [[1, 1], [1, 0]];
    let as_matrix = |x: A21| match x {
        A21::Pair(i, j) => Some(unit(i, j)),
        _ => None,
    };
    match (x, y) {
        (A21::One, z) | (z, A21::One) => z,
        (A21::Zero, _) | (_, A21::Zero) => A21::Zero,
        _ => {
            let r = mul(&mul(&as_matrix(x).unwrap(), &p), &as_matrix(y).unwrap());
            for i in 0..2u8 {
                for j in 0..2u8 {
                    if r[i as usize][j as usize] == 1 {
                        return A21::Pair(i, j);
                    }
                }
            }
            A21::Zero
        }
    }
}
