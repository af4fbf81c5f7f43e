#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "surfcov/errors.hpp"

namespace surfcov {

class SurfaceSig {
public:
    explicit SurfaceSig(int genus);

    int genus() const noexcept { return genus_; }
    int euler_char() const noexcept { return 2 - 2 * genus_; }
    int num_generators() const noexcept { return 2 * genus_; }
    int num_letters() const noexcept { return 4 * genus_; }

    friend bool operator==(const SurfaceSig&, const SurfaceSig&) = default;

private:
    int genus_;
};

// Letter codes: 4(k-1) + {0: a_k, 1: A_k, 2: b_k, 3: B_k}. This makes the
// numeric order a1 < A1 < b1 < B1 < a2 < ... and inversion a flip of bit 0.
using Letter = std::uint8_t;

inline Letter inverse(Letter x) noexcept { return static_cast<Letter>(x ^ 1u); }
inline int generator_of(Letter x) noexcept { return x >> 1; }
inline bool is_inverse_letter(Letter x) noexcept { return (x & 1u) != 0; }
inline Letter make_letter(int generator, bool inverted) noexcept {
    return static_cast<Letter>((generator << 1) | (inverted ? 1 : 0));
}

struct Word {
    SurfaceSig sig;
    std::vector<Letter> letters;

    std::size_t size() const noexcept { return letters.size(); }
    bool empty() const noexcept { return letters.empty(); }
    friend bool operator==(const Word&, const Word&) = default;
};

struct CurveClass {
    Word word;  // canonical cyclic representative
    bool oriented = false;

    bool trivial() const noexcept { return word.empty(); }
    std::size_t length() const noexcept { return word.size(); }
    friend bool operator==(const CurveClass& x, const CurveClass& y) {
        return x.oriented == y.oriented && x.word == y.word;
    }
};

// Shortlex on the canonical words; the deterministic order used everywhere.
bool operator<(const CurveClass& x, const CurveClass& y);

Word parse_word(std::string_view text, const SurfaceSig& sig);
std::string to_string(const Word& w);
std::string to_string(const CurveClass& c);
std::string letter_name(Letter x);

Word relator_word(const SurfaceSig& sig);
Word inverse(const Word& w);
Word concat(const Word& x, const Word& y);
Word power(const Word& w, int k);
Word free_reduce(const Word& w);

CurveClass dehn_reduce(const Word& w, bool oriented = false);
// Linear Dehn reduction: an equal group element with no relator piece longer than half.
Word dehn_reduce_linear(const Word& w);
// True when w is the identity in the surface group.
bool is_trivial(const Word& w);

std::vector<long> abelianize(const Word& w);

struct RootDecomposition {
    CurveClass root;
    int exponent = 1;
};
// Detects proper powers from the family of minimal cyclic representatives.
RootDecomposition primitive_root(const CurveClass& c);

inline constexpr std::size_t kDefaultEnumerationCap = 1'000'000;

std::vector<CurveClass> enumerate_classes(const SurfaceSig& sig, int max_len,
                                          std::size_t cap = kDefaultEnumerationCap);

}  // namespace surfcov
