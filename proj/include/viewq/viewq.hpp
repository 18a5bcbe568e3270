#pragma once

#include "viewq/access.hpp"
#include "viewq/clarity.hpp"
#include "viewq/compliance.hpp"
#include "viewq/content.hpp"
#include "viewq/errors.hpp"
#include "viewq/geometry.hpp"
#include "viewq/knee.hpp"
#include "viewq/project.hpp"
#include "viewq/report.hpp"
#include "viewq/spatial.hpp"
#include "viewq/vqi.hpp"
