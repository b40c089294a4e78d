use std::cell::RefCell;
use std::collections::{HashMap, VecDeque};
use std::rc::Rc;

use crate::perm::Permutation;

type SignMap = Rc<HashMap<Vec<usize>, i64>>;

thread_local! {
    static SIGNS: RefCell<HashMap<Permutation, SignMap>> = RefCell::new(HashMap::new());
}

/// Signs of all reduced words of `w` relative to its canonical word.
///
/// Odd divided differences satisfy the braid relation on the nose and
/// anticommute when far apart, so walking the graph of reduced words gives
/// `d_word = sign * d_canonical`.
fn sign_map(w: &Permutation) -> SignMap {
    if let Some(m) = SIGNS.with(|s| s.borrow().get(w).cloned()) {
        return m;
    }
    let start = w.canonical_word();
    let mut map: HashMap<Vec<usize>, i64> = HashMap::new();
    map.insert(start.clone(), 1);
    let mut queue = VecDeque::from([start]);
    while let Some(word) = queue.pop_front() {
        let s = map[&word];
        for k in 0..word.len() {
            let mut moves: Vec<(Vec<usize>, i64)> = Vec::new();
            if k + 1 < word.len() && word[k].abs_diff(word[k + 1]) > 1 {
                let mut nw = word.clone();
                nw.swap(k, k + 1);
                moves.push((nw, -s));
            }
            if k + 2 < word.len() && word[k] == word[k + 2] && word[k].abs_diff(word[k + 1]) == 1 {
                let mut nw = word.clone();
                nw[k] = word[k + 1];
                nw[k + 1] = word[k];
                nw[k + 2] = word[k + 1];
                moves.push((nw, s));
            }
            for (nw, ns) in moves {
                match map.get(&nw) {
                    Some(&old) => assert_eq!(old, ns, "inconsistent reduced-word signs for {w}"),
                    None => {
                        map.insert(nw.clone(), ns);
                        queue.push_back(nw);
                    }
                }
            }
        }
    }
    let m = Rc::new(map);
    SIGNS.with(|s| s.borrow_mut().insert(w.clone(), m.clone()));
    m
}

/// For a reduced word, `d_word = sign * d_{canonical(w)}`; `None` if the word is not reduced.
pub(crate) fn reduced_word_sign(n: usize, word: &[usize]) -> Option<(Permutation, i64)> {
    let w = Permutation::from_word(n, word);
    if w.length() != word.len() {
        return None;
    }
    let s = *sign_map(&w)
        .get(word)
        .expect("reduced word missing from its graph");
    Some((w, s))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn braid_and_commutation_signs() {
        assert_eq!(reduced_word_sign(3, &[2, 1, 2]).unwrap().1, 1);
        assert_eq!(reduced_word_sign(3, &[1, 2, 1]).unwrap().1, 1);
        assert_eq!(reduced_word_sign(4, &[3, 1]).unwrap().1, -1);
        assert!(reduced_word_sign(3, &[1, 1]).is_none());
    }

    #[test]
    fn all_words_of_longest_element() {
        for n in 2..=5 {
            let w0 = Permutation::longest(n);
            let m = sign_map(&w0);
            let expected = [1usize, 1, 2, 16, 768][n - 1];
            assert_eq!(m.len(), expected);
        }
    }
}
