use std::fmt;
use std::str::FromStr;

/// Inclusive integer range written `a..b` or `a`. `b < a` gives an empty
/// range.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Range {
    pub lo: usize,
    pub hi: usize,
}

impl Range {
    pub fn new(lo: usize, hi: usize) -> Self {
        Range { lo, hi }
    }

    pub fn iter(self) -> std::ops::RangeInclusive<usize> {
        self.lo..=self.hi
    }
}

impl FromStr for Range {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("bad range {s:?}, expected a..b or a"));
        match s.split_once("..") {
            Some((a, b)) => Ok(Range::new(parse(a)?, parse(b.strip_prefix('=').unwrap_or(b))?)),
            None => {
                let a = parse(s)?;
                Ok(Range::new(a, a))
            }
        }
    }
}

impl fmt::Display for Range {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_forms() {
        assert_eq!("2..6".parse::<Range>().unwrap(), Range::new(2, 6));
        assert_eq!("2..=6".parse::<Range>().unwrap(), Range::new(2, 6));
        assert_eq!("4".parse::<Range>().unwrap(), Range::new(4, 4));
        assert!("a..3".parse::<Range>().is_err());
        assert_eq!(Range::new(5, 2).iter().count(), 0);
    }
}
