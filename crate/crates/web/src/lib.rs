//! Browser bindings. Every function takes a group selector and returns a JSON string;
//! failures come back as `{"error": "..."}`.

use oliver::catalog;
use oliver::repmod::{self, A2Pair};
use oliver::verify;
use oliver::{Error, FiniteGroup, Result};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Enumerating more than this in a browser tab is not pleasant.
pub const MAX_ORDER: usize = 20_000;

fn load(selector: &str) -> Result<FiniteGroup> {
    if let Some(e) = catalog::lookup(selector.trim()) {
        if e.order as usize > MAX_ORDER {
            return Err(Error::CapExceeded {
                name: selector.into(),
                cap: MAX_ORDER,
            });
        }
    }
    let g = catalog::build(selector)?;
    if g.order() > MAX_ORDER {
        return Err(Error::CapExceeded {
            name: selector.into(),
            cap: MAX_ORDER,
        });
    }
    Ok(g)
}

fn respond(r: Result<Value>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e.to_string() }).to_string(),
    }
}

/// Catalog ids small enough for the demo.
#[wasm_bindgen]
pub fn catalog_ids() -> String {
    let ids: Vec<&str> = catalog::default_entries()
        .filter(|e| e.order as usize <= MAX_ORDER)
        .map(|e| e.id)
        .collect();
    json!(ids).to_string()
}

/// Laitinen number, predicates, b table and ranks.
#[wasm_bindgen]
pub fn group_info(selector: &str) -> String {
    respond(load(selector).and_then(|g| {
        let info = verify::group_info(&g, false)?;
        Ok(serde_json::to_value(info).expect("serializable"))
    }))
}

fn a2_json(g: &FiniteGroup, pair: &A2Pair) -> Value {
    let classes: Vec<Value> = g
        .conjugacy_classes()
        .iter()
        .map(|c| {
            json!({
                "order": c.order,
                "size": c.size,
                "u": pair.u.values[g.class_of(c.rep)],
                "v": pair.v.values[g.class_of(c.rep)],
            })
        })
        .collect();
    json!({
        "kernel_order": pair.kernel.order(),
        "p": pair.p, "q": pair.q, "a": pair.a, "b": pair.b,
        "dim": pair.u.dim(),
        "classes": classes,
    })
}

/// The two modules built from each `Z_pq` quotient, sampled on every class.
#[wasm_bindgen]
pub fn a2_explorer(selector: &str) -> String {
    respond(load(selector).and_then(|g| {
        let mut out = Vec::new();
        for h in repmod::a2_quotients(&g) {
            out.push(a2_json(&g, &repmod::construct_a2(&g, &h)?));
        }
        Ok(json!({ "group": g.name(), "order": g.order(), "quotients": out }))
    }))
}

/// Parity and `d_{V(G)}` over the reduced proper pairs.
#[wasm_bindgen]
pub fn vg_table(selector: &str) -> String {
    respond(load(selector).map(|g| {
        let v = repmod::v_g_character(&g);
        json!({
            "group": g.name(),
            "order": g.order(),
            "dim": v.net_char().dim(),
            "pairs": verify::vgg_defects(&g),
        })
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: String) -> Value {
        serde_json::from_str(&s).unwrap()
    }

    #[test]
    fn info_for_s5() {
        let v = parse(group_info("S5"));
        assert_eq!(v["order"], 120);
        assert_eq!(v["a_g"], 1);
        assert_eq!(v["oliver"], true);
    }

    #[test]
    fn z15_gives_seven_and_eleven() {
        let v = parse(a2_explorer("Z15"));
        let q = &v["quotients"][0];
        assert_eq!((q["a"].as_u64(), q["b"].as_u64()), (Some(7), Some(11)));
        assert_eq!(q["dim"], 4);
    }

    #[test]
    fn vg_pairs_for_s4() {
        let v = parse(vg_table("S4"));
        let pairs = v["pairs"].as_array().unwrap();
        assert!(!pairs.is_empty());
        for p in pairs {
            let d = p["defect"].as_i64().unwrap();
            if p["parity"] == "odd" {
                assert_eq!(d, 0);
            } else {
                assert!(d >= 1);
            }
        }
    }

    #[test]
    fn errors_are_json() {
        assert!(parse(group_info("Nope(3)"))["error"].is_string());
        assert!(parse(group_info("A9"))["error"]
            .as_str()
            .unwrap()
            .contains("20000"));
    }
}
