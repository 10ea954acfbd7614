#pragma once

#include "heis/point.hpp"

#include <json.hpp>

namespace heis {

/// An element of the Heisenberg similarity group in canonical factored form.
/// Evaluation order is fixed: apply(g, p) = translate(rotate(dilate(conj^c(p)))),
/// i.e. the optional conjugation (z,t) -> (conj z, -t) acts first and the left
/// translation last.  Every word in the four generators reduces to this form.
struct Similarity {
    HeisPoint translation{};  // c in p -> c * p
    double theta = 0.0;       // rotation angle, kept in (-pi, pi]
    double delta = 1.0;       // dilation factor, > 0
    bool conjugate = false;

    static Similarity identity() { return {}; }
    static Similarity translate(const HeisPoint& c) { return {c, 0.0, 1.0, false}; }
    static Similarity rotate(double theta);
    static Similarity dilate(double delta);
    static Similarity conjugation() { return {{}, 0.0, 1.0, true}; }
};

HeisPoint apply(const Similarity& g, const HeisPoint& p);

/// Composition g1 after g2, reduced to canonical form.
Similarity compose(const Similarity& g1, const Similarity& g2);

Similarity invert(const Similarity& g);

/// The constant K with dist(g p, g q) = K dist(p, q); equals the dilation factor.
double scale_factor(const Similarity& g);

enum class PairKind { Vertical, Planar, Generic };

/// Similarity class of an ordered pair, from the offset (w,s) = p1^{-1} * p2:
/// Vertical (w = 0), Planar (s = 0), or Generic with invariant iota = |s|/|w|^2.
struct PairClass {
    PairKind kind = PairKind::Generic;
    double iota = 0.0;  // meaningful for Generic only
};

PairClass classify_pair(const HeisPoint& p1, const HeisPoint& p2);

struct NormalizedPair {
    Similarity g;          // maps (p1, p2) onto (first, second)
    HeisPoint first;       // canonical representative of p1
    HeisPoint second;      // canonical representative of p2
    PairClass cls;
};

/// Moves a pair to its canonical position: Vertical -> ((0,0,-1),(0,0,1)),
/// Planar -> ((-1,0,0),(1,0,0)), Generic(iota) -> ((-1,0,0),(1,0,4 iota)).
NormalizedPair normalize_pair(const HeisPoint& p1, const HeisPoint& p2);

nlohmann::json to_json(const Similarity& g);
Similarity similarity_from_json(const nlohmann::json& j);

}  // namespace heis
