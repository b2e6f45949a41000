#include "covsys/parallel.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

namespace covsys
{

namespace
{
std::atomic<std::size_t> g_max_threads{0};
}

void set_max_threads(std::size_t n) { g_max_threads = n; }

std::size_t max_threads()
{
    const std::size_t n = g_max_threads.load();
    if (n != 0)
        return n;
    return std::max(1u, std::thread::hardware_concurrency());
}

namespace detail
{

void run_chunks(std::size_t n, std::size_t chunks,
                const std::function<void(std::size_t, std::size_t, std::size_t)> &body)
{
    const auto bounds = [&](std::size_t id) { return id * n / chunks; };
    if (chunks <= 1)
    {
        body(0, n, 0);
        return;
    }

    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> workers;
    workers.reserve(chunks - 1);
    for (std::size_t id = 1; id < chunks; ++id)
    {
        workers.emplace_back([&, id] {
            try
            {
                body(bounds(id), bounds(id + 1), id);
            }
            catch (...)
            {
                std::lock_guard lock(error_mutex);
                if (!error)
                    error = std::current_exception();
            }
        });
    }
    try
    {
        body(bounds(0), bounds(1), 0);
    }
    catch (...)
    {
        std::lock_guard lock(error_mutex);
        if (!error)
            error = std::current_exception();
    }
    for (auto &w : workers)
        w.join();
    if (error)
        std::rethrow_exception(error);
}

} // namespace detail
} // namespace covsys
