//! Demazure (0-Hecke) products on the Coxeter groups `S_n`, `B_n` and `D_n`.
//!
//! Elements are stored in one-line (window) notation. Products compose as
//! functions, `(uv)(i) = u(v(i))`, so `s_i w` permutes values and `w s_i`
//! permutes positions.
//!
//! ```
//! use demazure::{demazure_hop, demazure_oracle, Element, Family};
//!
//! let w = Element::from_window(Family::D, vec![2, -4, -1, 5, 3]).unwrap();
//! let v = Element::from_window(Family::D, vec![-4, 3, -5, -1, -2]).unwrap();
//! let p = demazure_hop(&w, &v).unwrap();
//! assert_eq!(p.window(), &[-1, -3, -4, -2, 5]);
//! assert_eq!(demazure_oracle(&w, &v).unwrap(), p);
//! ```

pub mod cayley;
pub mod demazure;
pub mod element;
pub mod error;
pub mod hopping;
pub mod notation;
pub mod parabolic;
pub mod perm;
pub mod signed;
pub mod verify;

pub use demazure::{
    demazure_hop, demazure_hop_a, demazure_hop_b, demazure_hop_d, demazure_oracle,
    demazure_unfolded_b, interval_product_check, lower_interval, star_word,
};
pub use element::{eval_word, Element, Family};
pub use error::{Error, Result};
pub use hopping::{hop_a, hop_signed, lift_a, lift_b, lift_d, HopList};
pub use parabolic::{decompose_d, Decomposition, Form, QFactor};
pub use perm::{Perm, Side, Word};
pub use signed::{EvenSignedPerm, Parity, SignedPerm, Unfolded};
