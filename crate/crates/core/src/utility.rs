//! Exact evaluation of the five-determinant utility function, total welfare,
//! and the rent-free efficiency value.
//!
//! For a node j the utility is
//!
//! ```text
//! u_j = -c0 * d_T * [j is the entering node]
//!     + d_j * (b1 - c)
//!     + sum over w at distance 1 < l <= D of b_l
//!     - sum over w with E(j,w) nonempty of gamma * b_l
//!     + sum over pairs {y,z} with j in E(y,z) of (gamma / e(y,z)) * 2 * b_l
//! ```
//!
//! Pairs beyond the benefit horizon D or in different components contribute
//! neither benefit nor rent. The entry fee is charged on the target's degree
//! at proposal time (its degree excluding the entrant's new link) and only
//! while the entrant evaluates or executes its first link.

use crate::graph::{Graph, GraphError};
use crate::metrics::{shortest_distances, GraphMetrics};
use crate::params::UtilityParams;
use num::{BigInt, BigRational, Zero};

/// Active entry evaluation: `entrant` is about to create its first link with
/// `target`, and the proposed edge is treated as present.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntryContext {
    pub entrant: usize,
    pub target: usize,
}

impl EntryContext {
    pub fn new(entrant: usize, target: usize) -> Result<Self, GraphError> {
        if entrant == target {
            return Err(GraphError::InvalidArguments(
                "entrant and target must differ".into(),
            ));
        }
        Ok(EntryContext { entrant, target })
    }
}

/// Per-determinant decomposition; `total` nets the signed terms.
#[derive(Clone, Debug, PartialEq)]
pub struct UtilityBreakdown {
    pub entry_fee: BigRational,
    pub direct: BigRational,
    pub link_costs: BigRational,
    pub indirect: BigRational,
    pub rents_paid: BigRational,
    pub bridging: BigRational,
    pub total: BigRational,
}

/// Breakdown of node j on a graph whose metrics are already computed; the
/// entry fee is supplied by the caller (zero for members).
pub(crate) fn breakdown_with_metrics(
    g: &Graph,
    m: &GraphMetrics,
    j: usize,
    params: &UtilityParams,
    entry_fee: BigRational,
) -> UtilityBreakdown {
    let n = g.node_count();
    let degree = BigRational::from_integer(BigInt::from(g.degree(j)));
    let direct = &degree * params.benefit(1).expect("b1 exists");
    let link_costs = &degree * &params.link_cost;
    let mut indirect = BigRational::zero();
    let mut rents_paid = BigRational::zero();
    for w in 0..n {
        if w == j {
            continue;
        }
        let Some(l) = m.dist.get(j, w) else { continue };
        if l <= 1 {
            continue;
        }
        let Some(b) = params.benefit(l as usize) else { continue };
        indirect += b;
        if m.essential_count(j, w) > 0 {
            rents_paid += &params.rent_fraction * b;
        }
    }
    let mut bridging = BigRational::zero();
    for y in 0..n {
        for z in (y + 1)..n {
            if y == j || z == j || !m.is_essential(j, y, z) {
                continue;
            }
            let l = m.dist.get(y, z).expect("essential pair is connected");
            let Some(b) = params.benefit(l as usize) else { continue };
            let e = BigRational::from_integer(BigInt::from(m.essential_count(y, z)));
            bridging += &params.rent_fraction / e * BigRational::from_integer(BigInt::from(2)) * b;
        }
    }
    let total = -&entry_fee + &direct - &link_costs + &indirect - &rents_paid + &bridging;
    UtilityBreakdown {
        entry_fee,
        direct,
        link_costs,
        indirect,
        rents_paid,
        bridging,
        total,
    }
}

pub(crate) fn node_utility(
    g: &Graph,
    m: &GraphMetrics,
    j: usize,
    params: &UtilityParams,
) -> BigRational {
    breakdown_with_metrics(g, m, j, params, BigRational::zero()).total
}

fn resolve_entry(
    g: &Graph,
    j: usize,
    params: &UtilityParams,
    ctx: Option<&EntryContext>,
) -> Result<(Graph, BigRational), GraphError> {
    let n = g.node_count();
    if j >= n {
        return Err(GraphError::NodeOutOfRange(j, n));
    }
    match ctx {
        Some(c) if c.entrant == j => {
            if c.target >= n {
                return Err(GraphError::NodeOutOfRange(c.target, n));
            }
            let mut with_edge = g.clone();
            if !with_edge.has_edge(c.entrant, c.target) {
                with_edge.add_edge(c.entrant, c.target)?;
            }
            let target_degree_at_proposal = with_edge.degree(c.target) - 1;
            let fee = &params.entry_factor
                * BigRational::from_integer(BigInt::from(target_degree_at_proposal));
            Ok((with_edge, fee))
        }
        _ => Ok((g.clone(), BigRational::zero())),
    }
}

/// Utility of node j under Eq. (1) semantics; see the module docs.
pub fn utility(
    g: &Graph,
    j: usize,
    params: &UtilityParams,
    ctx: Option<&EntryContext>,
) -> Result<BigRational, GraphError> {
    Ok(utility_breakdown(g, j, params, ctx)?.total)
}

pub fn utility_breakdown(
    g: &Graph,
    j: usize,
    params: &UtilityParams,
    ctx: Option<&EntryContext>,
) -> Result<UtilityBreakdown, GraphError> {
    let (eval_graph, fee) = resolve_entry(g, j, params, ctx)?;
    let m = GraphMetrics::compute(&eval_graph);
    Ok(breakdown_with_metrics(&eval_graph, &m, j, params, fee))
}

/// Sum of member utilities with no entry in progress.
pub fn social_welfare(g: &Graph, params: &UtilityParams) -> BigRational {
    let m = GraphMetrics::compute(g);
    (0..g.node_count())
        .map(|j| node_utility(g, &m, j, params))
        .sum()
}

/// Welfare with rents and entry fees stripped: rents are transfers and the
/// fee is paid at most once, so neither counts toward efficiency.
pub fn efficiency_value(g: &Graph, params: &UtilityParams) -> BigRational {
    let n = g.node_count();
    let dist = shortest_distances(g);
    let b1_minus_c = params.benefit(1).expect("b1 exists") - &params.link_cost;
    let mut total = BigRational::zero();
    for j in 0..n {
        total += BigRational::from_integer(BigInt::from(g.degree(j))) * &b1_minus_c;
        for w in 0..n {
            if w == j {
                continue;
            }
            if let Some(l) = dist.get(j, w) {
                if l > 1 {
                    if let Some(b) = params.benefit(l as usize) {
                        total += b;
                    }
                }
            }
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, rat};
    use crate::topology::{build_complete, build_star};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p_star() -> UtilityParams {
        UtilityParams::new(
            vec![rat(1), frac(1, 2), frac(3, 10), frac(1, 5)],
            frac(3, 5),
            frac(1, 10),
            frac(1, 10),
            None,
        )
        .unwrap()
    }

    #[test]
    fn star_leaf_and_center_utilities() {
        let p = p_star();
        let star = build_star(4);
        // Leaf: b1 - c + (n-2)(1-gamma) b2 = 13/10.
        assert_eq!(utility(&star, 1, &p, None).unwrap(), frac(13, 10));
        // Center: 3(b1-c) + gamma * C(3,2) * 2 b2 = 3/2.
        assert_eq!(utility(&star, 0, &p, None).unwrap(), frac(3, 2));
    }

    #[test]
    fn isolated_node_has_zero_utility() {
        let p = p_star();
        let mut g = build_star(4);
        g.add_node();
        assert_eq!(utility(&g, 4, &p, None).unwrap(), rat(0));
    }

    #[test]
    fn breakdown_terms_on_the_star() {
        let p = p_star();
        let star = build_star(4);
        let center = utility_breakdown(&star, 0, &p, None).unwrap();
        assert_eq!(center.bridging, frac(3, 10));
        assert_eq!(center.rents_paid, rat(0));
        let leaf = utility_breakdown(&star, 2, &p, None).unwrap();
        assert_eq!(leaf.rents_paid, frac(1, 10));
        assert_eq!(leaf.bridging, rat(0));
        // total identity holds on both.
        for b in [center, leaf] {
            assert_eq!(
                b.total,
                -&b.entry_fee + &b.direct - &b.link_costs + &b.indirect - &b.rents_paid
                    + &b.bridging
            );
        }
    }

    #[test]
    fn empty_graph_breakdown_is_zero() {
        let p = p_star();
        let g = Graph::new(3);
        let b = utility_breakdown(&g, 1, &p, None).unwrap();
        assert_eq!(b.total, rat(0));
        assert_eq!(b.direct, rat(0));
        assert_eq!(b.indirect, rat(0));
    }

    #[test]
    fn entry_context_charges_target_degree_at_proposal() {
        let p = p_star();
        // Entrant 3 joins a 3-node star at the center (degree 2 before the
        // link): delta = b1 - c + 2((1-gamma) b2 - c0) = 11/10.
        let mut g = build_star(3);
        g.add_node();
        let ctx = EntryContext::new(3, 0).unwrap();
        assert_eq!(utility(&g, 3, &p, Some(&ctx)).unwrap(), frac(11, 10));
        let fee = utility_breakdown(&g, 3, &p, Some(&ctx)).unwrap().entry_fee;
        assert_eq!(fee, frac(2, 10));
        // Joining a leaf instead: b1 - c + ((1-gamma) b2 - c0) + (1-gamma) b3.
        let ctx = EntryContext::new(3, 1).unwrap();
        assert_eq!(utility(&g, 3, &p, Some(&ctx)).unwrap(), frac(51, 50));
        // Context for a different node leaves it untouched.
        assert_eq!(utility(&g, 1, &p, Some(&ctx)).unwrap(), frac(11, 10) - frac(2, 10));
    }

    #[test]
    fn entry_context_rejects_equal_nodes() {
        assert!(EntryContext::new(2, 2).is_err());
    }

    #[test]
    fn welfare_and_efficiency_examples() {
        let p = p_star();
        let star = build_star(4);
        assert_eq!(social_welfare(&star, &p), frac(27, 5));
        assert_eq!(efficiency_value(&star, &p), frac(27, 5));
        assert_eq!(efficiency_value(&build_complete(4), &p), frac(24, 5));
        assert_eq!(social_welfare(&Graph::new(0), &p), rat(0));
        assert_eq!(efficiency_value(&Graph::new(5), &p), rat(0));
        // Single edge with c = b1 nets zero.
        let even = p.with_link_cost(rat(1)).unwrap();
        let k2 = build_complete(2);
        assert_eq!(social_welfare(&k2, &even), rat(0));
    }

    fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in (u + 1)..n {
                if rng.gen_bool(p) {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        g
    }

    #[test]
    fn rent_conservation_and_welfare_identity() {
        let p = p_star();
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..100 {
            let n = rng.gen_range(1..=8);
            let g = random_graph(&mut rng, n, rng.gen_range(0.1..0.9));
            let mut rents = rat(0);
            let mut bridging = rat(0);
            for j in 0..n {
                let b = utility_breakdown(&g, j, &p, None).unwrap();
                rents += b.rents_paid;
                bridging += b.bridging;
            }
            assert_eq!(rents, bridging);
            assert_eq!(social_welfare(&g, &p), efficiency_value(&g, &p));
        }
    }

    #[test]
    fn horizon_cutoff_drops_far_pairs() {
        // Path of 6 with horizon 4: endpoints at distance 5 contribute nothing.
        let p = UtilityParams::new(
            vec![rat(1), frac(1, 2), frac(3, 10), frac(1, 5)],
            frac(3, 5),
            frac(1, 10),
            frac(1, 10),
            None,
        )
        .unwrap();
        let path = Graph::from_edges(
            6,
            &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)],
        )
        .unwrap();
        let b = utility_breakdown(&path, 0, &p, None).unwrap();
        // Distances 2,3,4 benefit; distance-5 node does not.
        let expected = frac(1, 2) + frac(3, 10) + frac(1, 5);
        assert_eq!(b.indirect, expected);
        // All three indirect pairs pay rent (interior nodes are essential).
        assert_eq!(b.rents_paid, frac(1, 10) * expected);
    }

    #[test]
    fn adding_edges_never_hurts_third_parties_without_rents() {
        let p = UtilityParams::new(
            vec![rat(1), frac(1, 2), frac(3, 10), frac(1, 5)],
            frac(3, 5),
            rat(0),
            rat(0),
            None,
        )
        .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..100 {
            let n = rng.gen_range(3..=8);
            let mut g = random_graph(&mut rng, n, 0.3);
            let u = rng.gen_range(0..n);
            let v = rng.gen_range(0..n);
            if u == v || g.has_edge(u, v) {
                continue;
            }
            let before: Vec<BigRational> = (0..n)
                .map(|j| utility(&g, j, &p, None).unwrap())
                .collect();
            g.add_edge(u, v).unwrap();
            for j in 0..n {
                if j == u || j == v {
                    continue;
                }
                assert!(utility(&g, j, &p, None).unwrap() >= before[j]);
            }
        }
    }
}
