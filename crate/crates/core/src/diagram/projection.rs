use super::Diagram;

// Perfect matchings on 0..m as partner vectors.
type Matching = Vec<usize>;

fn to_matching(d: &Diagram) -> Matching {
    let ends: Vec<usize> = (1..=d.len()).filter(|&v| d.partner(v).is_some()).collect();
    ends.iter()
        .map(|&v| ends.binary_search(&d.partner(v).expect("paired")).expect("endpoint"))
        .collect()
}

fn to_diagram(m: &Matching) -> Diagram {
    let mut partner = vec![0; m.len() + 1];
    for (i, &j) in m.iter().enumerate() {
        partner[i + 1] = j + 1;
    }
    Diagram::from_partner(partner)
}

/// Drops the arcs whose left endpoints are listed, relabelling the rest.
fn remove_arcs(m: &Matching, lefts: &[usize]) -> Matching {
    let mut gone = vec![false; m.len()];
    for &i in lefts {
        gone[i] = true;
        gone[m[i]] = true;
    }
    let mut new_index = vec![usize::MAX; m.len()];
    let mut k = 0;
    for i in 0..m.len() {
        if !gone[i] {
            new_index[i] = k;
            k += 1;
        }
    }
    (0..m.len())
        .filter(|&i| !gone[i])
        .map(|i| new_index[m[i]])
        .collect()
}

/// Removes 1-arcs and collapses stacks until neither remains.
fn normalize(mut m: Matching) -> Matching {
    loop {
        let one_arcs: Vec<usize> = (0..m.len()).filter(|&i| m[i] == i + 1).collect();
        if !one_arcs.is_empty() {
            m = remove_arcs(&m, &one_arcs);
            continue;
        }
        // inner arc of the first parallel pair (i, j), (i + 1, j - 1)
        let parallel = (0..m.len()).find(|&i| m[i] > i + 1 && m[i + 1] + 1 == m[i]);
        match parallel {
            Some(i) => m = remove_arcs(&m, &[i + 1]),
            None => return m,
        }
    }
}

pub(super) fn shape(d: &Diagram) -> Diagram {
    to_diagram(&normalize(to_matching(d)))
}

pub(super) fn shadow(d: &Diagram) -> Diagram {
    let mut m = normalize(to_matching(d));
    loop {
        let lonely: Vec<usize> = (0..m.len())
            .filter(|&i| m[i] > i)
            .filter(|&i| !(0..m.len()).any(|k| (k < i && m[k] > i && m[k] < m[i]) || (k > i && k < m[i] && m[k] > m[i])))
            .collect();
        if lonely.is_empty() {
            return to_diagram(&m);
        }
        m = normalize(remove_arcs(&m, &lonely));
    }
}
