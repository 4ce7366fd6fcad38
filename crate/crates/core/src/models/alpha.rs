use super::ProblemSpec;
use crate::domain::VarId;
use crate::propagation::Relation;
use crate::search::SearchMode;

/// Word sums of the Alpha puzzle: each letter stands for a distinct value in
/// 1..=26 and the letters of each word add up to its total.
pub const ALPHA_EQUATIONS: [(&str, i64); 20] = [
    ("ballet", 45),
    ("cello", 43),
    ("concert", 74),
    ("flute", 30),
    ("fugue", 50),
    ("glee", 66),
    ("jazz", 58),
    ("lyre", 47),
    ("oboe", 53),
    ("opera", 65),
    ("polka", 59),
    ("quartet", 50),
    ("saxophone", 134),
    ("scale", 51),
    ("solo", 37),
    ("song", 61),
    ("soprano", 82),
    ("theme", 72),
    ("violin", 100),
    ("waltz", 34),
];

/// Variable `i` is letter `'a' + i`.
pub fn alpha() -> ProblemSpec {
    let mut p = ProblemSpec::new("alpha", Vec::new(), SearchMode::AllSolutions);
    let letters: Vec<VarId> = (0..26).map(|_| p.var(1, 26)).collect();
    p.alldiff(&letters);
    for (word, total) in ALPHA_EQUATIONS {
        let mut count = [0i64; 26];
        for b in word.bytes() {
            count[(b - b'a') as usize] += 1;
        }
        let terms: Vec<(i64, VarId)> =
            count.iter().enumerate().filter(|(_, &c)| c > 0).map(|(i, &c)| (c, letters[i])).collect();
        p.linear(&terms, Relation::Eq, total);
    }
    p
}
