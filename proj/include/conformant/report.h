#ifndef CONFORMANT_REPORT_H
#define CONFORMANT_REPORT_H

#include "pipeline.h"

#include <string>

namespace conformant {
std::string report_json(const RunReport &report);
std::string report_text(const RunReport &report);
}

#endif
