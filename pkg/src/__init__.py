"""valconv source package"""
