use serde::{Deserialize, Serialize};

use super::FiniteGroup;
use crate::error::{Error, Result};

/// JSON description of a group.
///
/// ```json
/// {"kind":"cyclic","n":4}
/// {"kind":"product","factors":[{"kind":"cyclic","n":2},{"kind":"cyclic","n":2}]}
/// {"kind":"semidirect","normal":{...},"acting":{...},"action":[[0,1,2],[0,2,1]]}
/// {"kind":"table","n":2,"table":[[0,1],[1,0]]}
/// ```
///
/// In `semidirect`, `action[a][x]` is `x ◁ a` (a right action).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GroupSpec {
    Cyclic {
        n: usize,
    },
    Product {
        factors: Vec<GroupSpec>,
    },
    Semidirect {
        normal: Box<GroupSpec>,
        acting: Box<GroupSpec>,
        action: Vec<Vec<usize>>,
    },
    Table {
        n: usize,
        table: Vec<Vec<usize>>,
    },
}

impl GroupSpec {
    pub fn build(&self) -> Result<FiniteGroup> {
        match self {
            GroupSpec::Cyclic { n } => {
                if *n == 0 {
                    return Err(Error::InvalidGroup("cyclic group of order 0".into()));
                }
                Ok(FiniteGroup::cyclic(*n))
            }
            GroupSpec::Product { factors } => {
                let fs = factors.iter().map(|f| f.build()).collect::<Result<Vec<_>>>()?;
                if fs.is_empty() {
                    return Ok(FiniteGroup::trivial());
                }
                Ok(FiniteGroup::direct_product(&fs))
            }
            GroupSpec::Semidirect { normal, acting, action } => {
                FiniteGroup::semidirect(&normal.build()?, &acting.build()?, action)
            }
            GroupSpec::Table { n, table } => {
                if table.len() != *n {
                    return Err(Error::InvalidGroup(format!("declared n = {n} but table has {} rows", table.len())));
                }
                FiniteGroup::from_table(table)
            }
        }
    }

    pub fn from_group(g: &FiniteGroup) -> Self {
        GroupSpec::Table { n: g.order(), table: g.rows() }
    }

    /// Parses either JSON or the shorthand forms `cyclic:N`, `dihedral:M`, `product:A,B,…`
    /// (cyclic factors) and the names understood by [`crate::catalog::by_name`].
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.starts_with('{') {
            return serde_json::from_str(t).map_err(|e| {
                Error::Parse(format!("group JSON at line {} column {}: {e}", e.line(), e.column()))
            });
        }
        if let Some(rest) = t.strip_prefix("cyclic:") {
            let n = rest.parse().map_err(|_| Error::Parse(format!("bad order in {t:?}")))?;
            return Ok(GroupSpec::Cyclic { n });
        }
        if let Some(rest) = t.strip_prefix("dihedral:") {
            let m: usize = rest.parse().map_err(|_| Error::Parse(format!("bad degree in {t:?}")))?;
            if m < 1 {
                return Err(Error::Parse(format!("bad degree in {t:?}")));
            }
            return Ok(Self::from_group(&FiniteGroup::dihedral(m)));
        }
        if let Some(rest) = t.strip_prefix("product:") {
            let factors = rest
                .split(',')
                .map(|x| x.trim().parse().map(|n| GroupSpec::Cyclic { n }))
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| Error::Parse(format!("bad factor list in {t:?}")))?;
            return Ok(GroupSpec::Product { factors });
        }
        match crate::catalog::by_name(t) {
            Some(g) => Ok(Self::from_group(&g)),
            None => Err(Error::Parse(format!("unrecognised group {t:?}"))),
        }
    }
}
