#pragma once

#include <compare>
#include <cstdint>
#include <functional>

namespace exo {

// Dense indices into a Universe's interned name tables. The tag keeps state and
// act indices from being mixed up.
template <typename Tag>
struct Id {
    std::uint32_t index = 0;

    constexpr Id() = default;
    constexpr explicit Id(std::uint32_t i) : index(i) {}

    friend constexpr auto operator<=>(Id, Id) = default;
};

struct StateTag;
struct ActTag;

using StateId = Id<StateTag>;
using ActId = Id<ActTag>;

}  // namespace exo

template <typename Tag>
struct std::hash<exo::Id<Tag>> {
    std::size_t operator()(exo::Id<Tag> id) const noexcept { return std::hash<std::uint32_t>{}(id.index); }
};
