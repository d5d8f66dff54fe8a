//! Browser playground: the human plays P1, the strategy answers as P2.
//!
//! Every method returns a JSON document so the page needs no glue beyond
//! `JSON.parse`. Errors come back as `{"error": "..."}` and leave the game
//! untouched.

use ramsey_core::board::BoardKind;
use ramsey_core::session::{explain, P1Move};
use ramsey_core::view::Game;
use serde_json::json;
use wasm_bindgen::prelude::*;

#[wasm_bindgen]
#[derive(Default)]
pub struct Playground {
    game: Option<Game>,
}

fn error(msg: impl ToString) -> String {
    json!({ "error": msg.to_string() }).to_string()
}

#[wasm_bindgen]
impl Playground {
    #[wasm_bindgen(constructor)]
    pub fn new() -> Playground {
        Playground::default()
    }

    /// Starts a new game (`graph` or `hyper`); returns the state.
    pub fn start(&mut self, game: &str, n: u8) -> String {
        let kind: BoardKind = match game.parse() {
            Ok(k) => k,
            Err(e) => return error(e),
        };
        match Game::new(kind, n) {
            Ok(g) => {
                self.game = Some(g);
                self.state()
            }
            Err(e) => error(e),
        }
    }

    /// Plays an edge such as `g:1:0-1`, or `stop`; returns P2's answer.
    pub fn play(&mut self, mv: &str) -> String {
        let Some(g) = self.game.as_mut() else { return error("no game started") };
        let mv: P1Move = match mv.parse() {
            Ok(m) => m,
            Err(e) => return error(e),
        };
        match g.play(mv) {
            Ok(out) => serde_json::to_string(&out).expect("outcome serializes"),
            Err(e) => error(e),
        }
    }

    pub fn stop(&mut self) -> String {
        self.play("stop")
    }

    pub fn state(&self) -> String {
        match &self.game {
            Some(g) => serde_json::to_string(&g.view()).expect("view serializes"),
            None => error("no game started"),
        }
    }

    /// Legal P1 edges.
    pub fn hints(&self) -> String {
        match &self.game {
            Some(g) => serde_json::to_string(&g.hints()).expect("edges serialize"),
            None => error("no game started"),
        }
    }

    /// Case path of the game so far, one annotated line per move.
    pub fn explain(&self) -> String {
        let Some(g) = &self.game else { return error("no game started") };
        let st = &g.session.state;
        match explain(st.kind(), st.n(), &g.session.trace) {
            Ok(lines) => serde_json::to_string(&lines).expect("strings serialize"),
            Err(e) => error(e),
        }
    }
}
