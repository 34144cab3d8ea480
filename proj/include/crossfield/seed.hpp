// SPDX-License-Identifier: Apache-2.0
//
// crossfield: simulation and estimation workbench for THz UM-MIMO
// array-of-subarrays channels
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef CROSSFIELD_SEED_HPP
#define CROSSFIELD_SEED_HPP

#include <cstdint>
#include <random>
#include <string_view>

namespace crossfield {

/// Deterministic hierarchical seed derivation. Every random stream in an
/// experiment hangs off one master seed through a chain of labelled children
/// (scenario -> distance -> rotation -> trial -> role), so changing one
/// coordinate re-randomizes exactly the streams below it.
class SeedTree {
  public:
    explicit SeedTree(std::uint64_t seed) : state_(mix(seed ^ 0x9e3779b97f4a7c15ull)) {}

    SeedTree child(std::uint64_t label) const {
        return SeedTree(mix(state_ ^ mix(label + 0x632be59bd9b4e019ull)), tag{});
    }
    SeedTree child(std::string_view role) const { return child(fnv1a(role)); }

    std::uint64_t value() const { return state_; }
    std::mt19937_64 rng() const { return std::mt19937_64(state_); }

  private:
    struct tag {};
    SeedTree(std::uint64_t raw, tag) : state_(raw) {}

    static std::uint64_t mix(std::uint64_t x) {
        // splitmix64 finalizer
        x += 0x9e3779b97f4a7c15ull;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
        return x ^ (x >> 31);
    }
    static std::uint64_t fnv1a(std::string_view s) {
        std::uint64_t h = 0xcbf29ce484222325ull;
        for (unsigned char c : s) {
            h ^= c;
            h *= 0x100000001b3ull;
        }
        return h;
    }

    std::uint64_t state_;
};

} // namespace crossfield

#endif
