#include "foundry/rng.hpp"

namespace foundry {

std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::uint64_t derive_seed(std::uint64_t base, std::string_view tag, std::uint64_t index) {
    Rng mixer(base ^ fnv1a64(tag) ^ (index * 0x9e3779b97f4a7c15ull + 0x2545f4914f6cdd1dull));
    return mixer.next_u64();
}

}  // namespace foundry
