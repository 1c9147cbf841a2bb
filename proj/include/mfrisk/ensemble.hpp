#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "mfrisk/random.hpp"

namespace mfrisk
{
/*!
 * Run fn(rng, index) for index in [0, n_paths) over up to `workers` threads.
 * Each path gets path_rng(master_seed, index) and its record is stored at
 * its index, so the output does not depend on the worker count. The first
 * exception thrown by any path is rethrown after all threads finish.
 */
template<class Record, class Fn>
std::vector<Record> run_ensemble(std::size_t n_paths, std::uint64_t master_seed,
                                 unsigned workers, Fn&& fn)
{
    std::vector<Record> out(n_paths);
    unsigned const nw = std::max(1u, std::min<unsigned>(
                                         workers, unsigned(std::max<std::size_t>(n_paths, 1))));
    std::exception_ptr err;
    std::mutex err_mutex;
    auto work = [&](unsigned w) {
        try
        {
            for (std::size_t i = w; i < n_paths; i += nw)
            {
                Rng rng = path_rng(master_seed, i);
                out[i] = fn(rng, i);
            }
        }
        catch (...)
        {
            std::lock_guard<std::mutex> lock(err_mutex);
            if (!err)
                err = std::current_exception();
        }
    };
    if (nw == 1)
    {
        work(0);
    }
    else
    {
        std::vector<std::thread> threads;
        threads.reserve(nw);
        for (unsigned w = 0; w < nw; ++w)
            threads.emplace_back(work, w);
        for (auto& t : threads)
            t.join();
    }
    if (err)
        std::rethrow_exception(err);
    return out;
}

}  // namespace mfrisk
