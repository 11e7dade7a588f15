use super::candidates::TwoChoiceArray;

/// One chosen candidate: character `i` of `S1` paired with `value` in `S2`
/// through candidate `b` (1 or 2).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Choice {
    pub i: usize,
    pub b: u8,
    pub value: usize,
}

const NONE: usize = usize::MAX;

/// Longest chain `i_1 < ... < i_l` with strictly increasing chosen values,
/// taking at most one of the two candidates of each position.
///
/// Patience sorting over positions in increasing order. Within one position
/// the larger candidate is placed first, so the smaller one can never
/// extend a chain ending in its sibling.
pub fn two_choice_lis(a: &TwoChoiceArray) -> Vec<Choice> {
    let mut nodes: Vec<(Choice, usize)> = Vec::new();
    let mut tails: Vec<usize> = Vec::new();
    let mut tail_node: Vec<usize> = Vec::new();
    for i in 1..=a.len() {
        let mut options: Vec<(usize, u8)> = [(a.first(i), 1), (a.second(i), 2)]
            .into_iter()
            .filter_map(|(v, b)| v.map(|v| (v, b)))
            .collect();
        options.sort_by(|x, y| y.0.cmp(&x.0).then(x.1.cmp(&y.1)));
        options.dedup_by_key(|o| o.0);
        for (value, b) in options {
            let pos = tails.partition_point(|&t| t < value);
            let pred = if pos == 0 { NONE } else { tail_node[pos - 1] };
            nodes.push((Choice { i, b, value }, pred));
            let id = nodes.len() - 1;
            if pos == tails.len() {
                tails.push(value);
                tail_node.push(id);
            } else {
                tails[pos] = value;
                tail_node[pos] = id;
            }
        }
    }
    let mut out = Vec::with_capacity(tails.len());
    let mut cur = tail_node.last().copied().unwrap_or(NONE);
    while cur != NONE {
        out.push(nodes[cur].0);
        cur = nodes[cur].1;
    }
    out.reverse();
    out
}
