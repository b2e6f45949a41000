#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <vector>

namespace covsys
{

// Upper bound on worker threads used by the sweeps below. 0 means hardware
// concurrency. The CLI wires COVCTL_THREADS into this.
void set_max_threads(std::size_t n);
std::size_t max_threads();

namespace detail
{
// Runs body(chunk_begin, chunk_end, chunk_id) over [0, n) split into
// `chunks` contiguous pieces.
void run_chunks(std::size_t n, std::size_t chunks,
                const std::function<void(std::size_t, std::size_t, std::size_t)> &body);
} // namespace detail

// Map-reduce over an index range. Each chunk folds its indices in order and
// the partial results are combined in chunk order, so the result does not
// depend on the thread count as long as `combine` is associative.
template <class R, class Fold, class Combine>
R parallel_reduce(std::size_t n, R init, Fold fold, Combine combine)
{
    if (n == 0)
        return init;
    const std::size_t chunks = std::min<std::size_t>(n, std::max<std::size_t>(1, max_threads()));
    std::vector<R> partial(chunks, init);
    detail::run_chunks(n, chunks, [&](std::size_t b, std::size_t e, std::size_t id) {
        R acc = init;
        for (std::size_t i = b; i < e; ++i)
            acc = fold(std::move(acc), i);
        partial[id] = std::move(acc);
    });
    R out = std::move(init);
    for (auto &p : partial)
        out = combine(std::move(out), std::move(p));
    return out;
}

} // namespace covsys
