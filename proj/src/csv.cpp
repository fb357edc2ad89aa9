#include "skillnet/csv.hpp"

#include <algorithm>
#include <cctype>

namespace skillnet {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::string body = line;
    if (!body.empty() && body.back() == '\r') body.pop_back();
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = body.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(body.substr(start));
            break;
        }
        fields.push_back(body.substr(start, comma - start));
        start = comma + 1;
    }
    return fields;
}

std::string lowercase_copy(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

}  // namespace skillnet
