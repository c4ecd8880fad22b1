use std::collections::{HashMap, VecDeque};

use super::MooreMachine;

/// Minimal equivalent machine by Moore partition refinement.
///
/// Unreachable states are dropped, states are split by output, and blocks are
/// refined by the blocks of their successors until the partition is stable.
/// The result is numbered in breadth-first order from the initial state, so
/// equivalent machines minimize to identical values.
pub fn minimize(m: &MooreMachine) -> MooreMachine {
    let width = m.p().get();
    let reachable = m.reachable();
    let states: Vec<usize> = (0..m.num_states()).filter(|&s| reachable[s]).collect();

    let mut block = vec![usize::MAX; m.num_states()];
    let mut count = {
        let mut ids = HashMap::new();
        for &s in &states {
            let next = ids.len();
            block[s] = *ids.entry(m.outputs()[s]).or_insert(next);
        }
        ids.len()
    };

    let mut signature = Vec::with_capacity(width as usize + 1);
    loop {
        let mut ids: HashMap<Vec<usize>, usize> = HashMap::with_capacity(count * 2);
        let mut refined = vec![usize::MAX; m.num_states()];
        for &s in &states {
            signature.clear();
            signature.push(block[s]);
            signature.extend((0..width).map(|d| block[m.next(s, d)]));
            let next = ids.len();
            refined[s] = *ids.entry(signature.clone()).or_insert(next);
        }
        let new_count = ids.len();
        block = refined;
        if new_count == count {
            break;
        }
        count = new_count;
    }

    // Renumber blocks breadth-first from the initial block.
    let mut representative = vec![usize::MAX; count];
    for &s in &states {
        if representative[block[s]] == usize::MAX {
            representative[block[s]] = s;
        }
    }
    let mut order = vec![usize::MAX; count];
    let mut queue = VecDeque::from([block[m.initial()]]);
    order[block[m.initial()]] = 0;
    let mut next_id = 1;
    let mut by_order = Vec::with_capacity(count);
    while let Some(b) = queue.pop_front() {
        by_order.push(b);
        let rep = representative[b];
        for d in 0..width {
            let t = block[m.next(rep, d)];
            if order[t] == usize::MAX {
                order[t] = next_id;
                next_id += 1;
                queue.push_back(t);
            }
        }
    }

    let mut transitions = Vec::with_capacity(count * width as usize);
    let mut outputs = Vec::with_capacity(count);
    for &b in &by_order {
        let rep = representative[b];
        outputs.push(m.outputs()[rep]);
        transitions.extend((0..width).map(|d| order[block[m.next(rep, d)]]));
    }
    MooreMachine::from_flat(m.p(), 0, transitions, outputs)
}
