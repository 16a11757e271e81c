// Microbenchmark comparing the serial reference kernels against their
// OpenMP variants: per-word boundary classification, pairwise distance
// matrices, and the non-locking sample sweep. Both sides must produce
// identical results; the checksum column guards that.

#include <chrono>
#include <iomanip>
#include <iostream>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "shiftlab/constructions.hpp"
#include "shiftlab/follower.hpp"
#include "shiftlab/measure.hpp"
#include "shiftlab/rng.hpp"

using namespace shiftlab;

namespace {

double now_seconds() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

void report(const std::string& name, double serial, double parallel, bool same,
            const std::string& checksum) {
    std::cout << std::left << std::setw(34) << name << std::right << std::fixed
              << std::setprecision(3) << std::setw(9) << serial << " s" << std::setw(9)
              << parallel << " s   x" << std::setprecision(2)
              << (parallel > 0 ? serial / parallel : 0.0) << "   "
              << (same ? "match" : "MISMATCH") << "   " << checksum << "\n";
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::cout << "OpenMP threads: " << omp_get_max_threads() << "\n";
#else
    std::cout << "OpenMP unavailable; parallel variants run serially\n";
#endif
    shared_morse_oracle();  // pay the one-time factor table up front
    std::cout << std::left << std::setw(34) << "kernel" << std::right << std::setw(11)
              << "serial" << std::setw(11) << "parallel" << "   speedup  check\n";

    {
        ShiftSpace space = make_magic_morse();
        Schedule schedule = Schedule::standard();
        schedule.entries.push_back({14, 16});
        double t0 = now_seconds();
        BoundaryReport serial = boundary_estimate(space, 6, schedule);
        double t1 = now_seconds();
        BoundaryReport parallel = boundary_estimate_parallel(space, 6, schedule);
        double t2 = now_seconds();
        bool same = serial.serialize() == parallel.serialize();
        report("boundary classify (magic Morse)", t1 - t0, t2 - t1, same,
               std::to_string(serial.growing.size()) + " growing");
    }

    {
        MetricParam p = MetricParam::half();
        EPSequence tail = EPSequence::periodic("0#");
        EPSequence x(morse_word(6) + "#" + tail.preperiod(), tail.period());
        FiniteMeasure mu = empirical_measure(x, 64);
        FiniteMeasure nu = morse_empirical(1024, 1024 + (16u << 6));
        double t0 = now_seconds();
        auto serial = pairwise_distance_matrix(mu, nu, p, false);
        double t1 = now_seconds();
        auto parallel = pairwise_distance_matrix(mu, nu, p, true);
        double t2 = now_seconds();
        bool same = serial == parallel;
        Rat sum = 0;
        for (const auto& row : serial)
            for (const Rat& v : row) sum += v;
        report("distance matrix 64 x 1024", t1 - t0, t2 - t1, same,
               "sum=" + rat_to_string(sum).substr(0, 12));
    }

    {
        MetricParam p = MetricParam::half();
        double t0 = now_seconds();
        Rng rng_serial(11);
        NonTpoReport serial = verify_non_tpo_ball(200, 40, 6, 8, p, rng_serial, false);
        double t1 = now_seconds();
        Rng rng_parallel(11);
        NonTpoReport parallel = verify_non_tpo_ball(200, 40, 6, 8, p, rng_parallel, true);
        double t2 = now_seconds();
        bool same = serial.rows.size() == parallel.rows.size();
        for (std::size_t i = 0; same && i < serial.rows.size(); ++i)
            same = serial.rows[i].margin == parallel.rows[i].margin &&
                   serial.rows[i].slack == parallel.rows[i].slack;
        report("non-tpo sample sweep 200 x 40", t1 - t0, t2 - t1, same,
               std::to_string(serial.violations()) + " violations");
    }

    return 0;
}
