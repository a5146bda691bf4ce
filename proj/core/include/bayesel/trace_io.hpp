#ifndef BAYESEL_TRACE_IO_HPP
#define BAYESEL_TRACE_IO_HPP

#include <string>

#include "bayesel/two_step_mh.hpp"

namespace bayesel {

// CSV layout: iter,accepted,log_post,<state columns>. iter counts from 1.
// Doubles use shortest round-trip formatting, so identical runs produce
// byte-identical files.
void write_trace_csv(const std::string& path, const Trace& trace);

// Reads a file written by write_trace_csv (header required).
Trace read_trace_csv(const std::string& path);

}  // namespace bayesel

#endif
