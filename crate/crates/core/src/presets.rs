//! Small reference channels and schemes with known information quantities.

use crate::channel::{ChannelAlphabets, ChannelSpec, CodingScheme, SchemeAlphabets};

fn bsc(p: f64, input: usize, output: usize) -> f64 {
    if input == output {
        1.0 - p
    } else {
        p
    }
}

/// Two independent binary pipes with crossovers `p1`, `p2` and no state.
/// The input is `x = 2 b1 + b2`; `Y1` observes `b1`, `Y2` observes `b2`.
pub fn parallel_bsc(p1: f64, p2: f64) -> ChannelSpec {
    let a = ChannelAlphabets { w: 1, x: 4, y1: 2, y2: 2 };
    ChannelSpec::from_fn(a, vec![1.0], move |x, _, y1, y2| {
        bsc(p1, x / 2, y1) * bsc(p2, x % 2, y2)
    })
}

/// Noiseless parallel pipes.
pub fn clean_parallel_pipes() -> ChannelSpec {
    parallel_bsc(0.0, 0.0)
}

/// Independent auxiliaries `V1 ~ Bern(q1)`, `V2 ~ Bern(q2)` wired to the two
/// pipes of [`parallel_bsc`].
pub fn pipe_scheme(q1: f64, q2: f64) -> CodingScheme {
    let c = ChannelAlphabets { w: 1, x: 4, y1: 2, y2: 2 };
    let bern = |q: f64, v: usize| if v == 1 { q } else { 1.0 - q };
    CodingScheme::from_fn(
        SchemeAlphabets { u: 1, v1: 2, v2: 2 },
        &c,
        vec![1.0],
        move |_, _, v1, v2| bern(q1, v1) * bern(q2, v2),
        |_, v1, v2, x| (x == 2 * v1 + v2) as u8 as f64,
    )
}

/// Wiretap-style channel: binary input, `Y1` sees it through a BSC(`p1`),
/// `Y2` through an independent BSC(`p2`). No state.
pub fn wiretap_bsc(p1: f64, p2: f64) -> ChannelSpec {
    let a = ChannelAlphabets { w: 1, x: 2, y1: 2, y2: 2 };
    ChannelSpec::from_fn(a, vec![1.0], move |x, _, y1, y2| bsc(p1, x, y1) * bsc(p2, x, y2))
}

/// Single-user scheme for [`wiretap_bsc`]: `V1` uniform, `X = V1`, `V2` and
/// `U` constant.
pub fn wiretap_scheme() -> CodingScheme {
    let c = ChannelAlphabets { w: 1, x: 2, y1: 2, y2: 2 };
    CodingScheme::from_fn(
        SchemeAlphabets { u: 1, v1: 2, v2: 1 },
        &c,
        vec![1.0],
        |_, _, _, _| 0.5,
        |_, v1, _, x| (x == v1) as u8 as f64,
    )
}

/// Binary state `W ~ Bern(q)` added to the input at both receivers:
/// `Y_t = X xor W xor Z_t` with `Z_t ~ Bern(p_t)`.
pub fn binary_dirty_channel(q: f64, p1: f64, p2: f64) -> ChannelSpec {
    let a = ChannelAlphabets { w: 2, x: 2, y1: 2, y2: 2 };
    ChannelSpec::from_fn(a, vec![1.0 - q, q], move |x, w, y1, y2| {
        bsc(p1, x ^ w, y1) * bsc(p2, x ^ w, y2)
    })
}

/// Scheme where each auxiliary is a noisy copy of the state,
/// `V_t = W xor N_t` with `N_t ~ Bern(a_t)` independent, and `X = V1 xor V2`.
pub fn state_copy_scheme(c: &ChannelAlphabets, a1: f64, a2: f64) -> CodingScheme {
    assert_eq!((c.w, c.x), (2, 2), "binary state and input");
    CodingScheme::from_fn(
        SchemeAlphabets { u: 1, v1: 2, v2: 2 },
        c,
        vec![1.0],
        move |w, _, v1, v2| bsc(a1, w, v1) * bsc(a2, w, v2),
        |_, v1, v2, x| (x == v1 ^ v2) as u8 as f64,
    )
}
